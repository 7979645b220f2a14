#include "dunkl/opalg.hpp"

#include <sstream>
#include <stdexcept>

namespace dunkl {

namespace {

thread_local size_t g_termBudget = 0;

void requireCompatible(const NormalOp& a, const NormalOp& b) {
    if (!a.config() || !b.config() || !a.config()->ringCompatible(*b.config()))
        throw std::invalid_argument("NormalOp: configuration mismatch");
}

GaussianRational binom(uint32_t n, uint32_t k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return GaussianRational(mpq_class(b));
}

} // namespace

TermBudgetGuard::TermBudgetGuard(size_t maxTerms) : previous_(g_termBudget) {
    g_termBudget = maxTerms;
}
TermBudgetGuard::~TermBudgetGuard() { g_termBudget = previous_; }
size_t TermBudgetGuard::current() { return g_termBudget; }

NormalOp NormalOp::identity(ConfigPtr cfg) {
    NormalOp op(cfg);
    op.insert(OpKey::unit(cfg->n), FieldElem::one(cfg));
    return op;
}

NormalOp NormalOp::mulBy(FieldElem f) {
    NormalOp op(f.config());
    if (!f.isZero()) op.insert(OpKey::unit(op.cfg_->n), std::move(f));
    return op;
}

NormalOp NormalOp::partialOp(ConfigPtr cfg, int axis) {
    if (axis < 0 || axis >= cfg->n) throw std::out_of_range("partialOp: axis");
    NormalOp op(cfg);
    OpKey k = OpKey::unit(cfg->n);
    k.deriv[axis] = 1;
    op.insert(k, FieldElem::one(cfg));
    return op;
}

NormalOp NormalOp::reflOp(ConfigPtr cfg, int axis) {
    if (axis < 0 || axis >= cfg->n) throw std::out_of_range("reflOp: axis");
    NormalOp op(cfg);
    OpKey k = OpKey::unit(cfg->n);
    k.refl[axis] = 1;
    op.insert(k, FieldElem::one(cfg));
    return op;
}

NormalOp NormalOp::term(FieldElem coeff, OpKey key) {
    NormalOp op(coeff.config());
    if (int(key.refl.size()) != op.cfg_->n || int(key.deriv.size()) != op.cfg_->n)
        throw std::invalid_argument("NormalOp::term: bad key size");
    op.insert(key, std::move(coeff));
    return op;
}

bool NormalOp::reflectionFree() const {
    for (const auto& [k, c] : terms_)
        for (uint8_t e : k.refl)
            if (e) return false;
    return true;
}

void NormalOp::insert(const OpKey& k, const FieldElem& c) {
    if (c.isZero()) return;
    auto [it, fresh] = terms_.emplace(k, c);
    if (!fresh) {
        it->second = it->second + c;
        if (it->second.isZero()) terms_.erase(it);
    }
    if (g_termBudget && terms_.size() > g_termBudget) throw TermBudgetExceeded(terms_.size());
}

NormalOp NormalOp::operator-() const {
    NormalOp r(cfg_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

NormalOp NormalOp::operator+(const NormalOp& o) const {
    if (terms_.empty() && !cfg_) return o;
    if (o.terms_.empty() && !o.cfg_) return *this;
    requireCompatible(*this, o);
    NormalOp r = *this;
    for (const auto& [k, c] : o.terms_) r.insert(k, c);
    return r;
}

NormalOp NormalOp::operator-(const NormalOp& o) const { return *this + (-o); }

NormalOp NormalOp::operator*(const NormalOp& o) const {
    requireCompatible(*this, o);
    NormalOp r(cfg_);
    const int n = cfg_->n;
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            // ca R^ea d^ba  o  cb R^eb d^bb: push d^ba through cb with the
            // higher Leibniz rule, let R^ea act on the derived coefficient,
            // and collect the sign of the surviving derivatives passing R^eb.
            OpKey base;
            base.refl.resize(n);
            for (int i = 0; i < n; ++i) base.refl[i] = ka.refl[i] ^ kb.refl[i];
            std::vector<uint32_t> alpha(n, 0);
            std::function<void(int, const FieldElem&, const GaussianRational&)> walk =
                [&](int axis, const FieldElem& dcb, const GaussianRational& mult) {
                    if (axis == n) {
                        OpKey key = base;
                        key.deriv.resize(n);
                        long signPow = 0;
                        for (int i = 0; i < n; ++i) {
                            key.deriv[i] = ka.deriv[i] - alpha[i] + kb.deriv[i];
                            if (kb.refl[i]) signPow += long(ka.deriv[i] - alpha[i]);
                        }
                        GaussianRational m = mult;
                        if (signPow & 1) m = -m;
                        FieldElem coeff = dcb;
                        for (int i = 0; i < n; ++i)
                            if (ka.refl[i]) coeff = coeff.reflected(i);
                        coeff = (ca * coeff).scaled(m);
                        r.insert(key, coeff);
                        return;
                    }
                    FieldElem cur = dcb;
                    for (uint32_t a = 0;; ++a) {
                        alpha[axis] = a;
                        walk(axis + 1, cur, mult * binom(ka.deriv[axis], a));
                        if (a == ka.deriv[axis]) break;
                        cur = cur.partial(axis);
                        if (cur.isZero()) break;
                    }
                    alpha[axis] = 0;
                };
            walk(0, cb, GaussianRational(1));
        }
    }
    return r;
}

NormalOp NormalOp::scaled(const ParamScalar& s) const {
    NormalOp r(cfg_);
    for (const auto& [k, c] : terms_) r.insert(k, c.scaled(s));
    return r;
}

NormalOp NormalOp::scaled(const GaussianRational& c) const {
    return scaled(ParamScalar::constant(cfg_->n, c));
}

NormalOp NormalOp::pow(unsigned e) const {
    NormalOp r = identity(cfg_);
    for (unsigned k = 0; k < e; ++k) r = r * *this;
    return r;
}

FieldElem NormalOp::apply(const FieldElem& f) const {
    FieldElem out = FieldElem::zero(cfg_);
    for (const auto& [k, c] : terms_) {
        FieldElem v = f;
        for (int i = 0; i < cfg_->n && !v.isZero(); ++i)
            for (uint32_t d = 0; d < k.deriv[i] && !v.isZero(); ++d) v = v.partial(i);
        for (int i = 0; i < cfg_->n; ++i)
            if (k.refl[i]) v = v.reflected(i);
        out = out + c * v;
    }
    return out;
}

NormalOp NormalOp::substituted(const Substitution& s) const {
    if (s.empty()) return *this;
    NormalOp r(cfg_->with(s));
    for (const auto& [k, c] : terms_) r.insert(k, c.substituted(s));
    return r;
}

std::optional<std::pair<OpKey, FieldElem>> NormalOp::smallestTerm() const {
    if (terms_.empty()) return std::nullopt;
    return *terms_.begin();
}

std::string NormalOp::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool firstLine = true;
    for (const auto& [k, c] : terms_) {
        if (!firstLine) os << "\n";
        firstLine = false;
        std::string ops;
        for (int i = 0; i < cfg_->n; ++i)
            if (k.refl[i]) {
                if (!ops.empty()) ops += "*";
                ops += "R" + std::to_string(i + 1);
            }
        for (int i = 0; i < cfg_->n; ++i)
            if (k.deriv[i]) {
                if (!ops.empty()) ops += "*";
                ops += "D" + std::to_string(i + 1);
                if (k.deriv[i] > 1) ops += "^" + std::to_string(k.deriv[i]);
            }
        if (ops.empty()) ops = "1";
        os << ops << " | " << c.str();
    }
    return os.str();
}

OperatorExpr::Ptr OperatorExpr::identity(ConfigPtr cfg) {
    auto e = std::make_shared<OperatorExpr>();
    e->kind_ = Kind::Identity;
    e->cfg_ = std::move(cfg);
    return e;
}

OperatorExpr::Ptr OperatorExpr::mulBy(FieldElem f) {
    auto e = std::make_shared<OperatorExpr>();
    e->kind_ = Kind::MulBy;
    e->cfg_ = f.config();
    e->field_ = std::move(f);
    return e;
}

OperatorExpr::Ptr OperatorExpr::del(ConfigPtr cfg, int axis) {
    if (axis < 0 || axis >= cfg->n) throw std::out_of_range("OperatorExpr::del: axis");
    auto e = std::make_shared<OperatorExpr>();
    e->kind_ = Kind::Del;
    e->cfg_ = std::move(cfg);
    e->axis_ = axis;
    return e;
}

OperatorExpr::Ptr OperatorExpr::refl(ConfigPtr cfg, int axis) {
    if (axis < 0 || axis >= cfg->n) throw std::out_of_range("OperatorExpr::refl: axis");
    auto e = std::make_shared<OperatorExpr>();
    e->kind_ = Kind::Refl;
    e->cfg_ = std::move(cfg);
    e->axis_ = axis;
    return e;
}

OperatorExpr::Ptr OperatorExpr::scale(ParamScalar s, Ptr inner) {
    auto e = std::make_shared<OperatorExpr>();
    e->kind_ = Kind::Scale;
    e->cfg_ = inner->config();
    e->scale_ = std::move(s);
    e->children_.push_back(std::move(inner));
    return e;
}

OperatorExpr::Ptr OperatorExpr::sum(std::vector<Ptr> parts) {
    if (parts.empty()) throw std::invalid_argument("OperatorExpr::sum: empty");
    auto e = std::make_shared<OperatorExpr>();
    e->kind_ = Kind::Sum;
    e->cfg_ = parts.front()->config();
    e->children_ = std::move(parts);
    return e;
}

OperatorExpr::Ptr OperatorExpr::prod(std::vector<Ptr> parts) {
    if (parts.empty()) throw std::invalid_argument("OperatorExpr::prod: empty");
    auto e = std::make_shared<OperatorExpr>();
    e->kind_ = Kind::Prod;
    e->cfg_ = parts.front()->config();
    e->children_ = std::move(parts);
    return e;
}

NormalOp normalize(const OperatorExpr& e) {
    switch (e.kind()) {
    case OperatorExpr::Kind::Identity: return NormalOp::identity(e.config());
    case OperatorExpr::Kind::MulBy: return NormalOp::mulBy(e.field());
    case OperatorExpr::Kind::Del: return NormalOp::partialOp(e.config(), e.axis());
    case OperatorExpr::Kind::Refl: return NormalOp::reflOp(e.config(), e.axis());
    case OperatorExpr::Kind::Scale: return normalize(e.children()[0]).scaled(e.scaleFactor());
    case OperatorExpr::Kind::Sum: {
        NormalOp r = NormalOp::zero(e.config());
        for (const auto& c : e.children()) r = r + normalize(c);
        return r;
    }
    case OperatorExpr::Kind::Prod: {
        NormalOp r = NormalOp::identity(e.config());
        for (const auto& c : e.children()) r = r * normalize(c);
        return r;
    }
    }
    throw std::logic_error("normalize: bad node");
}

NormalOp normalize(const OperatorExpr::Ptr& e) { return normalize(*e); }

std::vector<FieldElem> defaultProbes(const ConfigPtr& cfg, int maxDegree) {
    std::vector<FieldElem> probes;
    const int lo = -2, hi = maxDegree;
    const int span = hi - lo + 1;
    long count = 1;
    for (int i = 0; i < cfg->n; ++i) count *= span;
    for (int rf = 0; rf <= (cfg->rEnabled ? 1 : 0); ++rf) {
        for (long idx = 0; idx < count; ++idx) {
            Monomial m = Monomial::unit(cfg->n);
            long rest = idx;
            for (int i = 0; i < cfg->n; ++i) {
                m.xexp[i] = lo + int(rest % span);
                rest /= span;
            }
            m.rflag = uint8_t(rf);
            probes.push_back(FieldElem::monomialTerm(cfg, m, ParamScalar::one(cfg->n)));
        }
    }
    return probes;
}

} // namespace dunkl
