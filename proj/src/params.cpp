#include "dunkl/params.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dunkl {

std::string rationalStr(const mpq_class& q) { return q.get_str(); }

std::string GaussianRational::str() const {
    if (isZero()) return "0";
    std::string rs;
    if (im == 0) return rationalStr(re);
    std::string imPart;
    if (im == 1)
        imPart = "i";
    else if (im == -1)
        imPart = "-i";
    else
        imPart = rationalStr(im) + "*i";
    if (re == 0) return imPart;
    std::string out = rationalStr(re);
    if (imPart[0] == '-')
        out += " - " + imPart.substr(1);
    else
        out += " + " + imPart;
    return "(" + out + ")";
}

std::string paramName(int n, int id) {
    switch (id) {
    case P_HBAR: return "hbar";
    case P_OMEGA: return "omega";
    case P_K: return "k";
    case P_KAPPA: return "kappa";
    case P_LAMBDA: return "lambda";
    case P_ETA: return "eta";
    default: break;
    }
    int off = id - P_FIXED_COUNT;
    if (off < n) return "mu" + std::to_string(off + 1);
    off -= n;
    if (off < n) return "beta" + std::to_string(off + 1);
    off -= n;
    if (off < n) return "gamma" + std::to_string(off + 1);
    throw std::out_of_range("paramName: bad id");
}

int paramIdByName(int n, const std::string& name) {
    for (int id = 0; id < paramCount(n); ++id)
        if (paramName(n, id) == name) return id;
    return -1;
}

ParamScalar ParamScalar::zero(int n) {
    ParamScalar p;
    p.n_ = n;
    return p;
}

ParamScalar ParamScalar::constant(int n, GaussianRational c) {
    ParamScalar p;
    p.n_ = n;
    if (!c.isZero()) p.terms_.emplace(Exponents(paramCount(n), 0), std::move(c));
    return p;
}

ParamScalar ParamScalar::variable(int n, int id, int exp) {
    if (id < 0 || id >= paramCount(n)) throw std::out_of_range("ParamScalar::variable: bad id");
    ParamScalar p;
    p.n_ = n;
    Exponents e(paramCount(n), 0);
    e[id] = static_cast<uint8_t>(exp);
    p.terms_.emplace(std::move(e), GaussianRational(1));
    return p;
}

bool ParamScalar::isConstant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](uint8_t x) { return x == 0; });
}

GaussianRational ParamScalar::constantTerm() const {
    Exponents z(paramCount(n_), 0);
    auto it = terms_.find(z);
    return it == terms_.end() ? GaussianRational() : it->second;
}

void ParamScalar::insertTerm(const Exponents& e, const GaussianRational& c) {
    if (c.isZero()) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.isZero()) terms_.erase(it);
    }
}

ParamScalar ParamScalar::operator-() const {
    ParamScalar r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

ParamScalar ParamScalar::operator+(const ParamScalar& o) const {
    if (n_ != o.n_ && !terms_.empty() && !o.terms_.empty())
        throw std::invalid_argument("ParamScalar: dimension mismatch");
    ParamScalar r = terms_.empty() ? o : *this;
    if (terms_.empty()) return r;
    for (const auto& [e, c] : o.terms_) r.insertTerm(e, c);
    return r;
}

ParamScalar ParamScalar::operator-(const ParamScalar& o) const { return *this + (-o); }

ParamScalar ParamScalar::operator*(const ParamScalar& o) const {
    ParamScalar r = ParamScalar::zero(n_ ? n_ : o.n_);
    if (terms_.empty() || o.terms_.empty()) return r;
    if (n_ != o.n_) throw std::invalid_argument("ParamScalar: dimension mismatch");
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(ea.size());
            for (size_t k = 0; k < e.size(); ++k) {
                unsigned s = unsigned(ea[k]) + unsigned(eb[k]);
                if (s > 255) throw std::overflow_error("ParamScalar: exponent overflow");
                e[k] = static_cast<uint8_t>(s);
            }
            r.insertTerm(e, ca * cb);
        }
    }
    return r;
}

ParamScalar ParamScalar::scaled(const GaussianRational& c) const {
    ParamScalar r = ParamScalar::zero(n_);
    if (c.isZero()) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

ParamScalar ParamScalar::pow(unsigned e) const {
    ParamScalar r = ParamScalar::one(n_);
    for (unsigned k = 0; k < e; ++k) r = r * *this;
    return r;
}

ParamScalar ParamScalar::substituted(const Substitution& s) const {
    if (s.empty()) return *this;
    ParamScalar r = ParamScalar::zero(n_);
    for (const auto& [e, c] : terms_) {
        GaussianRational v = c;
        Exponents e2 = e;
        for (const auto& [id, val] : s) {
            if (id < 0 || id >= int(e2.size())) throw std::out_of_range("substitute: bad param id");
            for (int k = 0; k < e2[id]; ++k) v *= GaussianRational(val);
            e2[id] = 0;
        }
        r.insertTerm(e2, v);
    }
    return r;
}

std::string ParamScalar::str() const {
    if (terms_.empty()) return "0";
    // Render each monomial, then sort by the rendered factor string so the
    // output follows alphabetical parameter order.
    std::vector<std::pair<std::string, const GaussianRational*>> rows;
    rows.reserve(terms_.size());
    for (const auto& [e, c] : terms_) {
        std::vector<std::string> factors;
        for (size_t id = 0; id < e.size(); ++id) {
            if (e[id] == 0) continue;
            std::string f = paramName(n_, int(id));
            if (e[id] > 1) f += "^" + std::to_string(int(e[id]));
            factors.push_back(std::move(f));
        }
        std::sort(factors.begin(), factors.end());
        std::string mono;
        for (const auto& f : factors) {
            if (!mono.empty()) mono += "*";
            mono += f;
        }
        rows.emplace_back(std::move(mono), &c);
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, c] : rows) {
        std::string cs = c->str();
        if (!first) {
            if (cs[0] == '-') {
                os << " - ";
                cs = cs.substr(1);
            } else {
                os << " + ";
            }
        }
        first = false;
        if (mono.empty())
            os << cs;
        else if (cs == "1")
            os << mono;
        else if (cs == "-1")
            os << "-" << mono;
        else
            os << cs << "*" << mono;
    }
    return os.str();
}

} // namespace dunkl
