#include "dunkl/ring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dunkl {

namespace {

// r-free Laurent polynomial, used internally for atom arithmetic.
using XPoly = std::map<std::vector<int32_t>, ParamScalar>;

void xpolyInsert(XPoly& p, const std::vector<int32_t>& m, const ParamScalar& c) {
    if (c.isZero()) return;
    auto [it, fresh] = p.emplace(m, c);
    if (!fresh) {
        it->second = it->second + c;
        if (it->second.isZero()) p.erase(it);
    }
}

// Exact division of f by d, working either from the lex-greatest or the
// lex-least term of d; that term's coefficient must be a rational constant.
// Termination is enforced with per-axis degree bounds (valuations add in a
// domain, so an exact quotient must fit inside the bound box).
std::optional<XPoly> xpolyDivideExact(const XPoly& f, const XPoly& d, bool fromTop) {
    if (f.empty()) return XPoly{};
    if (d.empty()) return std::nullopt;
    const size_t n = f.begin()->first.size();

    auto lead = [&](const XPoly& p) { return fromTop ? std::prev(p.end()) : p.begin(); };
    auto dl = lead(d);
    GaussianRational dc = dl->second.constantTerm();
    if (!dl->second.isConstant() || dc.isZero())
        throw std::logic_error("xpolyDivideExact: divisor pivot not constant");

    std::vector<int32_t> qlo(n), qhi(n);
    for (size_t ax = 0; ax < n; ++ax) {
        int32_t flo = INT32_MAX, fhi = INT32_MIN, dlo = INT32_MAX, dhi = INT32_MIN;
        for (const auto& kv : f) {
            flo = std::min(flo, kv.first[ax]);
            fhi = std::max(fhi, kv.first[ax]);
        }
        for (const auto& kv : d) {
            dlo = std::min(dlo, kv.first[ax]);
            dhi = std::max(dhi, kv.first[ax]);
        }
        qlo[ax] = flo - dlo;
        qhi[ax] = fhi - dhi;
        if (qlo[ax] > qhi[ax]) return std::nullopt;
    }

    XPoly rem = f, q;
    GaussianRational dcInv = dc.inv();
    while (!rem.empty()) {
        auto rl = lead(rem);
        std::vector<int32_t> qm(n);
        for (size_t ax = 0; ax < n; ++ax) {
            qm[ax] = rl->first[ax] - dl->first[ax];
            if (qm[ax] < qlo[ax] || qm[ax] > qhi[ax]) return std::nullopt;
        }
        ParamScalar qc = rl->second.scaled(dcInv);
        xpolyInsert(q, qm, qc);
        for (const auto& [m, c] : d) {
            std::vector<int32_t> mm(n);
            for (size_t ax = 0; ax < n; ++ax) mm[ax] = qm[ax] + m[ax];
            xpolyInsert(rem, mm, (qc * c).scaled(GaussianRational(-1)));
        }
    }
    return q;
}

XPoly atomXPoly(const SiteConfig& cfg, Atom a) {
    const int n = cfg.n;
    auto param = [&](int id) { return ParamScalar::variable(n, id).substituted(cfg.subs); };
    XPoly p;
    std::vector<int32_t> unit(n, 0);
    auto addS = [&](const ParamScalar& coef) {
        for (int i = 0; i < n; ++i) {
            auto m = unit;
            m[i] = 2;
            xpolyInsert(p, m, coef);
        }
    };
    switch (a) {
    case A_S: addS(ParamScalar::one(n)); break;
    case A_KPLUS:
        xpolyInsert(p, unit, ParamScalar::one(n));
        addS(param(P_KAPPA));
        break;
    case A_KMINUS:
        xpolyInsert(p, unit, ParamScalar::one(n));
        addS(-param(P_KAPPA));
        break;
    case A_LAMBDA:
        xpolyInsert(p, unit, ParamScalar::one(n));
        addS(param(P_LAMBDA));
        break;
    case A_QETA:
        xpolyInsert(p, unit, param(P_ETA) * param(P_ETA));
        addS(-ParamScalar::one(n));
        break;
    default: throw std::out_of_range("atomXPoly");
    }
    return p;
}

// Whether the atom degenerates under the configuration's substitution:
// either to a nonzero rational constant or to c*S (Qeta with eta = 0).
struct AtomCollapse {
    bool collapsed = false;
    bool toS = false;           // collapsed to factor * S
    GaussianRational factor{1}; // the constant, or the S prefactor
};

AtomCollapse atomCollapse(const SiteConfig& cfg, Atom a) {
    AtomCollapse out;
    if (a == A_S) return out;
    XPoly p = atomXPoly(cfg, a);
    if (p.empty()) throw std::domain_error("denominator atom vanishes under substitution");
    std::vector<int32_t> unit(cfg.n, 0);
    if (p.size() == 1 && p.begin()->first == unit && p.begin()->second.isConstant()) {
        out.collapsed = true;
        out.factor = p.begin()->second.constantTerm();
        if (out.factor.isZero())
            throw std::domain_error("denominator atom vanishes under substitution");
        return out;
    }
    XPoly s = atomXPoly(cfg, A_S);
    if (p.size() == s.size()) {
        auto pit = p.begin();
        auto sit = s.begin();
        GaussianRational ratio;
        bool ok = true, first = true;
        for (; pit != p.end(); ++pit, ++sit) {
            if (!(pit->first == sit->first) || !pit->second.isConstant() ||
                !sit->second.isConstant()) {
                ok = false;
                break;
            }
            GaussianRational r = pit->second.constantTerm() / sit->second.constantTerm();
            if (first) {
                ratio = r;
                first = false;
            } else if (!(ratio == r)) {
                ok = false;
                break;
            }
        }
        if (ok && !first) {
            out.collapsed = true;
            out.toS = true;
            out.factor = ratio;
        }
    }
    return out;
}

void requireCompatible(const FieldElem& a, const FieldElem& b) {
    if (!a.config() || !b.config() || !a.config()->ringCompatible(*b.config()))
        throw std::invalid_argument("FieldElem: configuration mismatch");
}

} // namespace

std::string atomName(Atom a) {
    switch (a) {
    case A_S: return "S";
    case A_KPLUS: return "Kplus";
    case A_KMINUS: return "Kminus";
    case A_LAMBDA: return "L";
    case A_QETA: return "Qeta";
    default: return "?";
    }
}

std::shared_ptr<const SiteConfig> SiteConfig::make(int n, bool rEnabled, bool betaGamma,
                                                   Substitution subs) {
    if (n < 1) throw std::invalid_argument("SiteConfig: dimension must be >= 1");
    if (rEnabled && n < 2)
        throw std::invalid_argument(
            "radial extension requires N >= 2 (r^2 = x1^2 is a square at N = 1)");
    auto cfg = std::make_shared<SiteConfig>();
    cfg->n = n;
    cfg->rEnabled = rEnabled;
    cfg->betaOn.assign(n, betaGamma);
    cfg->gammaOn.assign(n, betaGamma);
    cfg->subs = std::move(subs);
    return cfg;
}

std::shared_ptr<const SiteConfig> SiteConfig::with(Substitution extra) const {
    auto cfg = std::make_shared<SiteConfig>(*this);
    for (auto& [k, v] : extra) cfg->subs[k] = v;
    return cfg;
}

std::shared_ptr<const SiteConfig> SiteConfig::withFlags(std::vector<bool> beta,
                                                        std::vector<bool> gamma) const {
    auto cfg = std::make_shared<SiteConfig>(*this);
    cfg->betaOn = std::move(beta);
    cfg->gammaOn = std::move(gamma);
    if (int(cfg->betaOn.size()) != n || int(cfg->gammaOn.size()) != n)
        throw std::invalid_argument("SiteConfig::withFlags: size mismatch");
    return cfg;
}

bool DenExp::trivial() const {
    return std::all_of(e.begin(), e.end(), [](uint32_t v) { return v == 0; });
}

FieldElem FieldElem::zero(ConfigPtr cfg) {
    FieldElem f;
    f.cfg_ = std::move(cfg);
    return f;
}

FieldElem FieldElem::one(ConfigPtr cfg) { return constant(std::move(cfg), GaussianRational(1)); }

FieldElem FieldElem::constant(ConfigPtr cfg, GaussianRational c) {
    const int n = cfg ? cfg->n : 0;
    return scalar(std::move(cfg), ParamScalar::constant(n, std::move(c)));
}

FieldElem FieldElem::scalar(ConfigPtr cfg, ParamScalar s) {
    FieldElem f;
    f.cfg_ = std::move(cfg);
    s = s.substituted(f.cfg_->subs);
    if (!s.isZero()) f.num_.emplace(Monomial::unit(f.cfg_->n), std::move(s));
    return f;
}

FieldElem FieldElem::coordinate(ConfigPtr cfg, int i, int e) {
    FieldElem f;
    f.cfg_ = std::move(cfg);
    if (i < 0 || i >= f.cfg_->n) throw std::out_of_range("FieldElem::coordinate: axis");
    f.num_.emplace(Monomial::axis(f.cfg_->n, i, e), ParamScalar::one(f.cfg_->n));
    return f;
}

FieldElem FieldElem::radial(ConfigPtr cfg) {
    FieldElem f;
    f.cfg_ = std::move(cfg);
    if (!f.cfg_->rEnabled)
        throw std::invalid_argument("radial extension disabled in this configuration");
    f.num_.emplace(Monomial::radial(f.cfg_->n), ParamScalar::one(f.cfg_->n));
    return f;
}

FieldElem FieldElem::monomialTerm(ConfigPtr cfg, Monomial m, ParamScalar c) {
    FieldElem f;
    f.cfg_ = std::move(cfg);
    if (int(m.xexp.size()) != f.cfg_->n) throw std::invalid_argument("monomialTerm: bad size");
    if (m.rflag && !f.cfg_->rEnabled) throw std::invalid_argument("monomialTerm: r disabled");
    c = c.substituted(f.cfg_->subs);
    if (!c.isZero()) f.num_.emplace(std::move(m), std::move(c));
    f.normalize();
    return f;
}

FieldElem FieldElem::atomPoly(ConfigPtr cfg, Atom a) {
    FieldElem f;
    f.cfg_ = cfg;
    for (auto& [m, c] : atomXPoly(*cfg, a)) f.num_.emplace(Monomial{m, 0}, c);
    return f;
}

FieldElem FieldElem::atomInverse(ConfigPtr cfg, Atom a, unsigned e) {
    FieldElem f = one(cfg);
    if (e == 0) return f;
    AtomCollapse col = atomCollapse(*cfg, a);
    if (col.collapsed) {
        GaussianRational c = col.factor.inv();
        GaussianRational scale(1);
        for (unsigned k = 0; k < e; ++k) scale *= c;
        f = f.scaled(scale);
        if (col.toS) f.den_.e[A_S] += e;
        f.normalize();
        return f;
    }
    f.den_.e[a] += e;
    return f;
}

void FieldElem::normalize() {
    // r^2 -> S until every monomial has rflag in {0,1}
    bool again = true;
    while (again) {
        again = false;
        std::map<Monomial, ParamScalar> out;
        for (auto& [m, c] : num_) {
            if (c.isZero()) continue;
            if (m.rflag >= 2) {
                again = true;
                for (int i = 0; i < cfg_->n; ++i) {
                    Monomial m2 = m;
                    m2.rflag -= 2;
                    m2.xexp[i] += 2;
                    auto [it, fresh] = out.emplace(std::move(m2), c);
                    if (!fresh) it->second = it->second + c;
                }
            } else {
                auto [it, fresh] = out.emplace(m, c);
                if (!fresh) it->second = it->second + c;
            }
        }
        num_ = std::move(out);
    }
    for (auto it = num_.begin(); it != num_.end();) {
        if (it->second.isZero())
            it = num_.erase(it);
        else
            ++it;
    }
    if (num_.empty()) {
        den_ = DenExp{};
        return;
    }
    reduceAtoms();
}

void FieldElem::reduceAtoms() {
    for (int a = 0; a < ATOM_COUNT; ++a) {
        if (den_.e[a] == 0) continue;
        XPoly d = atomXPoly(*cfg_, Atom(a));
        const bool fromTop = (a == A_S || a == A_QETA);
        while (den_.e[a] > 0) {
            XPoly even, odd;
            for (const auto& [m, c] : num_) (m.rflag ? odd : even)[m.xexp] = c;
            auto qe = xpolyDivideExact(even, d, fromTop);
            if (!qe) break;
            auto qo = xpolyDivideExact(odd, d, fromTop);
            if (!qo) break;
            std::map<Monomial, ParamScalar> out;
            for (auto& [m, c] : *qe) out.emplace(Monomial{m, 0}, c);
            for (auto& [m, c] : *qo) out.emplace(Monomial{m, 1}, c);
            num_ = std::move(out);
            den_.e[a] -= 1;
        }
    }
}

FieldElem FieldElem::operator-() const {
    FieldElem r = *this;
    for (auto& [m, c] : r.num_) c = -c;
    return r;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    if (isZero() && cfg_ == nullptr) return o;
    if (o.isZero() && o.cfg_ == nullptr) return *this;
    requireCompatible(*this, o);
    if (isZero()) return o;
    if (o.isZero()) return *this;
    DenExp cd;
    for (int a = 0; a < ATOM_COUNT; ++a) cd.e[a] = std::max(den_.e[a], o.den_.e[a]);
    auto lift = [&](const FieldElem& f) {
        std::map<Monomial, ParamScalar> num = f.num_;
        for (int a = 0; a < ATOM_COUNT; ++a) {
            uint32_t diff = cd.e[a] - f.den_.e[a];
            if (diff == 0) continue;
            XPoly ap = atomXPoly(*cfg_, Atom(a));
            for (uint32_t k = 0; k < diff; ++k) {
                std::map<Monomial, ParamScalar> out;
                for (const auto& [m, c] : num) {
                    for (const auto& [am, ac] : ap) {
                        Monomial mm = m;
                        for (size_t ax = 0; ax < am.size(); ++ax) mm.xexp[ax] += am[ax];
                        ParamScalar cc = c * ac;
                        auto [it, fresh] = out.emplace(std::move(mm), cc);
                        if (!fresh) it->second = it->second + cc;
                    }
                }
                num = std::move(out);
            }
        }
        return num;
    };
    FieldElem r;
    r.cfg_ = cfg_;
    r.den_ = cd;
    r.num_ = lift(*this);
    for (const auto& [m, c] : lift(o)) {
        auto [it, fresh] = r.num_.emplace(m, c);
        if (!fresh) it->second = it->second + c;
    }
    r.normalize();
    return r;
}

FieldElem FieldElem::operator-(const FieldElem& o) const { return *this + (-o); }

FieldElem FieldElem::operator*(const FieldElem& o) const {
    requireCompatible(*this, o);
    if (isZero()) return *this;
    if (o.isZero()) return o;
    FieldElem r;
    r.cfg_ = cfg_;
    for (int a = 0; a < ATOM_COUNT; ++a) r.den_.e[a] = den_.e[a] + o.den_.e[a];
    for (const auto& [ma, ca] : num_) {
        for (const auto& [mb, cb] : o.num_) {
            ParamScalar c = ca * cb;
            Monomial m;
            m.xexp.resize(cfg_->n);
            for (int ax = 0; ax < cfg_->n; ++ax) m.xexp[ax] = ma.xexp[ax] + mb.xexp[ax];
            m.rflag = ma.rflag + mb.rflag;
            auto [it, fresh] = r.num_.emplace(std::move(m), c);
            if (!fresh) it->second = it->second + c;
        }
    }
    r.normalize();
    return r;
}

FieldElem FieldElem::scaled(const ParamScalar& s) const {
    FieldElem r;
    r.cfg_ = cfg_;
    ParamScalar ss = s.substituted(cfg_->subs);
    if (ss.isZero() || isZero()) return r;
    r.den_ = den_;
    for (const auto& [m, c] : num_) r.num_.emplace(m, c * ss);
    r.normalize();
    return r;
}

FieldElem FieldElem::scaled(const GaussianRational& c) const {
    return scaled(ParamScalar::constant(cfg_->n, c));
}

bool FieldElem::operator==(const FieldElem& o) const { return (*this - o).isZero(); }

FieldElem FieldElem::dividedByDen(const DenExp& d) const {
    if (d.trivial()) return *this;
    FieldElem r = *this;
    for (int a = 0; a < ATOM_COUNT; ++a) r.den_.e[a] += d.e[a];
    r.normalize();
    return r;
}

FieldElem FieldElem::partial(int i) const {
    if (i < 0 || i >= cfg_->n) throw std::out_of_range("partial: axis");
    // derivative of the numerator polynomial
    FieldElem dP = zero(cfg_);
    for (const auto& [m, c] : num_) {
        if (m.xexp[i] != 0) {
            FieldElem t = zero(cfg_);
            Monomial m2 = m;
            m2.xexp[i] -= 1;
            t.num_.emplace(std::move(m2), c.scaled(GaussianRational(long(m.xexp[i]))));
            dP = dP + t;
        }
        if (m.rflag) {
            // d(r)/dx_i = x_i r / S
            FieldElem t = zero(cfg_);
            Monomial m2 = m;
            m2.xexp[i] += 1;
            t.num_.emplace(std::move(m2), c);
            t.den_.e[A_S] += 1;
            dP = dP + t;
        }
    }
    FieldElem result = dP.dividedByDen(den_);
    // denominator part: f * (-e_a) * d(atom_a)/atom_a
    for (int a = 0; a < ATOM_COUNT; ++a) {
        if (den_.e[a] == 0) continue;
        XPoly ap = atomXPoly(*cfg_, Atom(a));
        FieldElem da = zero(cfg_);
        for (const auto& [m, c] : ap) {
            if (m[i] == 0) continue;
            FieldElem t = zero(cfg_);
            Monomial m2{m, 0};
            m2.xexp[i] -= 1;
            t.num_.emplace(std::move(m2), c.scaled(GaussianRational(long(m[i]))));
            da = da + t;
        }
        if (da.isZero()) continue;
        FieldElem piece = *this * da;
        piece = piece.scaled(GaussianRational(-long(den_.e[a])));
        if (piece.isZero()) continue;
        piece.den_.e[a] += 1;
        piece.normalize();
        result = result + piece;
    }
    return result;
}

FieldElem FieldElem::reflected(int i) const {
    if (i < 0 || i >= cfg_->n) throw std::out_of_range("reflected: axis");
    FieldElem r = *this;
    for (auto& [m, c] : r.num_)
        if (m.xexp[i] & 1) c = -c;
    return r;
}

FieldElem FieldElem::divByX(int i) const {
    if (i < 0 || i >= cfg_->n) throw std::out_of_range("divByX: axis");
    FieldElem r = zero(cfg_);
    r.den_ = den_;
    for (const auto& [m, c] : num_) {
        Monomial m2 = m;
        m2.xexp[i] -= 1;
        r.num_.emplace(std::move(m2), c);
    }
    r.normalize();
    return r;
}

FieldElem FieldElem::substituted(const Substitution& s) const {
    if (s.empty()) return *this;
    FieldElem r;
    r.cfg_ = cfg_->with(s);
    r.den_ = den_;
    for (const auto& [m, c] : num_) {
        ParamScalar cc = c.substituted(s);
        if (!cc.isZero()) r.num_.emplace(m, cc);
    }
    r.foldAtomCollapse();
    r.normalize();
    return r;
}

void FieldElem::foldAtomCollapse() {
    GaussianRational scale(1);
    DenExp nd = den_;
    for (int a = 0; a < ATOM_COUNT; ++a) {
        if (den_.e[a] == 0 || a == A_S) continue;
        AtomCollapse col = atomCollapse(*cfg_, Atom(a));
        if (!col.collapsed) continue;
        GaussianRational inv = col.factor.inv();
        for (uint32_t k = 0; k < den_.e[a]; ++k) scale *= inv;
        if (col.toS) nd.e[A_S] += den_.e[a];
        nd.e[a] = 0;
    }
    den_ = nd;
    if (!scale.isOne())
        for (auto& [m, c] : num_) c = c.scaled(scale);
}

std::string FieldElem::str() const {
    if (num_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : num_) {
        std::string mono;
        for (int i = 0; i < cfg_->n; ++i) {
            if (m.xexp[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i + 1);
            if (m.xexp[i] != 1) mono += "^" + std::to_string(m.xexp[i]);
        }
        if (m.rflag) {
            if (!mono.empty()) mono += "*";
            mono += "r";
        }
        std::string cs = c.str();
        bool wrap = c.terms().size() > 1 && !mono.empty();
        std::string term;
        if (mono.empty())
            term = cs;
        else if (cs == "1")
            term = mono;
        else if (cs == "-1")
            term = "-" + mono;
        else
            term = (wrap ? "(" + cs + ")" : cs) + "*" + mono;
        if (!first) {
            if (term[0] == '-') {
                os << " - ";
                term = term.substr(1);
            } else {
                os << " + ";
            }
        }
        first = false;
        os << term;
    }
    if (!den_.trivial()) {
        std::string d;
        for (int a = 0; a < ATOM_COUNT; ++a) {
            if (den_.e[a] == 0) continue;
            if (!d.empty()) d += "*";
            d += atomName(Atom(a));
            if (den_.e[a] > 1) d += "^" + std::to_string(den_.e[a]);
        }
        return "(" + os.str() + ") / (" + d + ")";
    }
    return os.str();
}

} // namespace dunkl
