#pragma once

#include "dunkl/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dunkl {

/// Formal scalar parameters of the operator families. The first six are
/// global couplings; mu/beta/gamma come in one copy per axis, so the full
/// table has 6 + 3N entries for dimension N.
enum BaseParam : int {
    P_HBAR = 0,
    P_OMEGA,
    P_K, // Kepler-Coulomb coupling
    P_KAPPA,
    P_LAMBDA,
    P_ETA,
    P_FIXED_COUNT
};

inline int paramCount(int n) { return P_FIXED_COUNT + 3 * n; }
inline int muParam(int i) { return P_FIXED_COUNT + i; }                 // i in [0, n)
inline int betaParam(int n, int i) { return P_FIXED_COUNT + n + i; }     // i in [0, n)
inline int gammaParam(int n, int i) { return P_FIXED_COUNT + 2 * n + i; } // i in [0, n)

/// Name used in rendering and in parameter files ("mu1", "beta2", ...).
std::string paramName(int n, int id);
/// Inverse of paramName; returns -1 if unknown.
int paramIdByName(int n, const std::string& name);

/// Assignment of rational values to a subset of the parameters.
using Substitution = std::map<int, mpq_class>;

/// Polynomial in the formal parameters with Gaussian-rational coefficients.
/// Canonical: no zero coefficients are stored; exponents are nonnegative
/// (parameters are never divided by).
class ParamScalar {
public:
    using Exponents = std::vector<uint8_t>;

    ParamScalar() = default;

    static ParamScalar zero(int n);
    static ParamScalar constant(int n, GaussianRational c);
    static ParamScalar one(int n) { return constant(n, GaussianRational(1)); }
    static ParamScalar imaginaryUnit(int n) { return constant(n, GaussianRational::i()); }
    static ParamScalar variable(int n, int id, int exp = 1);

    int dim() const { return n_; }
    bool isZero() const { return terms_.empty(); }
    bool isConstant() const;
    /// The constant term (zero if absent).
    GaussianRational constantTerm() const;

    ParamScalar operator-() const;
    ParamScalar operator+(const ParamScalar& o) const;
    ParamScalar operator-(const ParamScalar& o) const;
    ParamScalar operator*(const ParamScalar& o) const;
    ParamScalar scaled(const GaussianRational& c) const;
    ParamScalar pow(unsigned e) const;

    bool operator==(const ParamScalar& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const ParamScalar& o) const { return !(*this == o); }

    /// Evaluate the given parameters at rational values; unassigned
    /// parameters stay formal.
    ParamScalar substituted(const Substitution& s) const;

    /// Deterministic rendering; factors within a monomial are printed in
    /// alphabetical parameter order and monomials sorted by that rendering.
    std::string str() const;

    const std::map<Exponents, GaussianRational>& terms() const { return terms_; }

private:
    void insertTerm(const Exponents& e, const GaussianRational& c);

    int n_ = 0; // ambient dimension (fixes the parameter table size)
    std::map<Exponents, GaussianRational> terms_;
};

} // namespace dunkl
