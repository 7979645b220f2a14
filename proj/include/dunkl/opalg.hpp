#pragma once

#include "dunkl/ring.hpp"

#include <functional>

namespace dunkl {

/// Key of a normally ordered term: reflection mask followed by derivative
/// multi-index. A term c * R^eps * d^beta applies derivatives first, then
/// reflections, then multiplies by the coefficient.
struct OpKey {
    std::vector<uint8_t> refl;   // entries in {0,1}
    std::vector<uint32_t> deriv; // derivative order per axis

    bool operator<(const OpKey& o) const {
        if (refl != o.refl) return refl < o.refl;
        return deriv < o.deriv;
    }
    bool operator==(const OpKey& o) const { return refl == o.refl && deriv == o.deriv; }

    static OpKey unit(int n) { return {std::vector<uint8_t>(n, 0), std::vector<uint32_t>(n, 0)}; }
};

/// Thrown when a normal-ordering product exceeds the configured term budget.
struct TermBudgetExceeded : std::runtime_error {
    explicit TermBudgetExceeded(size_t terms)
        : std::runtime_error("term budget exceeded at " + std::to_string(terms) + " terms") {}
};

/// Scoped term budget for normal-ordering products on the current thread;
/// zero means unlimited.
class TermBudgetGuard {
public:
    explicit TermBudgetGuard(size_t maxTerms);
    ~TermBudgetGuard();
    TermBudgetGuard(const TermBudgetGuard&) = delete;
    static size_t current();

private:
    size_t previous_;
};

/// Canonical (normally ordered) operator: a finite sum of terms
/// coefficient * reflections * derivatives, unique on the function space.
class NormalOp {
public:
    NormalOp() = default;
    explicit NormalOp(ConfigPtr cfg) : cfg_(std::move(cfg)) {}

    static NormalOp zero(ConfigPtr cfg) { return NormalOp(std::move(cfg)); }
    static NormalOp identity(ConfigPtr cfg);
    static NormalOp mulBy(FieldElem f);
    static NormalOp partialOp(ConfigPtr cfg, int axis);
    static NormalOp reflOp(ConfigPtr cfg, int axis);
    static NormalOp term(FieldElem coeff, OpKey key);

    const ConfigPtr& config() const { return cfg_; }
    const std::map<OpKey, FieldElem>& terms() const { return terms_; }
    size_t termCount() const { return terms_.size(); }
    bool isZero() const { return terms_.empty(); }
    /// True when no term carries a reflection.
    bool reflectionFree() const;

    NormalOp operator-() const;
    NormalOp operator+(const NormalOp& o) const;
    NormalOp operator-(const NormalOp& o) const;
    /// Operator composition a for the left factor: (*this) applied after o.
    NormalOp operator*(const NormalOp& o) const;
    NormalOp scaled(const ParamScalar& s) const;
    NormalOp scaled(const GaussianRational& c) const;
    NormalOp pow(unsigned e) const;

    bool operator==(const NormalOp& o) const { return (*this - o).isZero(); }
    bool operator!=(const NormalOp& o) const { return !(*this == o); }

    /// Apply to a function-space element.
    FieldElem apply(const FieldElem& f) const;
    /// Substitute parameters in every coefficient (atoms fold as in FieldElem).
    NormalOp substituted(const Substitution& s) const;

    /// The lexicographically smallest term, for failure witnesses.
    std::optional<std::pair<OpKey, FieldElem>> smallestTerm() const;

    /// Deterministic rendering, keys sorted by (refl, deriv).
    std::string str() const;

    void insert(const OpKey& k, const FieldElem& c);

private:
    ConfigPtr cfg_;
    std::map<OpKey, FieldElem> terms_;
};

inline NormalOp commutator(const NormalOp& a, const NormalOp& b) { return a * b - b * a; }
inline NormalOp anticommutator(const NormalOp& a, const NormalOp& b) { return a * b + b * a; }

/// Noncommutative operator AST over the atomic operators. Products are in
/// application order: the rightmost factor acts first.
class OperatorExpr {
public:
    using Ptr = std::shared_ptr<const OperatorExpr>;
    enum class Kind { Identity, MulBy, Del, Refl, Scale, Sum, Prod };

    static Ptr identity(ConfigPtr cfg);
    static Ptr mulBy(FieldElem f);
    static Ptr del(ConfigPtr cfg, int axis);
    static Ptr refl(ConfigPtr cfg, int axis);
    static Ptr scale(ParamScalar s, Ptr e);
    static Ptr sum(std::vector<Ptr> parts);
    static Ptr prod(std::vector<Ptr> parts);

    Kind kind() const { return kind_; }
    const ConfigPtr& config() const { return cfg_; }
    const FieldElem& field() const { return field_; }
    int axis() const { return axis_; }
    const ParamScalar& scaleFactor() const { return scale_; }
    const std::vector<Ptr>& children() const { return children_; }

private:
    Kind kind_ = Kind::Identity;
    ConfigPtr cfg_;
    FieldElem field_;
    int axis_ = 0;
    ParamScalar scale_;
    std::vector<Ptr> children_;
};

/// Rewrite an operator AST into its canonical normal form.
NormalOp normalize(const OperatorExpr& e);
NormalOp normalize(const OperatorExpr::Ptr& e);

/// Default probe set: monomials x^alpha * r^eps with alpha_i in
/// [-2, maxDegree] and eps in {0,1} when r is enabled.
std::vector<FieldElem> defaultProbes(const ConfigPtr& cfg, int maxDegree = 3);

} // namespace dunkl
