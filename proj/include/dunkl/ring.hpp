#pragma once

#include "dunkl/params.hpp"

#include <array>
#include <memory>
#include <optional>

namespace dunkl {

/// Denominator atoms tracked beyond the coordinates themselves. Powers of
/// x_i are always folded into the Laurent exponents of the numerator, so
/// only these five polynomial atoms need tracked exponents.
enum Atom : int {
    A_S = 0,     // x1^2 + ... + xN^2
    A_KPLUS,     // 1 + kappa*S
    A_KMINUS,    // 1 - kappa*S
    A_LAMBDA,    // 1 + lambda*S
    A_QETA,      // eta^2 - S
    ATOM_COUNT
};

std::string atomName(Atom a);

/// Ambient configuration shared by every value of the ring: dimension,
/// whether the radial extension r (r^2 = S) is enabled, which beta/gamma
/// parameters are active, and the parameter substitution in force.
///
/// Two configurations are ring-compatible when dimension, radial flag and
/// substitution agree; beta/gamma activity only affects constructors.
struct SiteConfig {
    int n = 1;
    bool rEnabled = false;
    std::vector<bool> betaOn;  // size n
    std::vector<bool> gammaOn; // size n
    Substitution subs;

    static std::shared_ptr<const SiteConfig> make(int n, bool rEnabled = false,
                                                  bool betaGamma = false,
                                                  Substitution subs = {});
    std::shared_ptr<const SiteConfig> with(Substitution extra) const;
    std::shared_ptr<const SiteConfig> withFlags(std::vector<bool> beta,
                                                std::vector<bool> gamma) const;

    bool ringCompatible(const SiteConfig& o) const {
        return n == o.n && rEnabled == o.rEnabled && subs == o.subs;
    }
};

using ConfigPtr = std::shared_ptr<const SiteConfig>;

/// Monomial in the coordinates: Laurent exponents plus the radial flag
/// (rflag is 0 or 1 after normalization since r^2 = S).
struct Monomial {
    std::vector<int32_t> xexp;
    uint8_t rflag = 0;

    bool operator<(const Monomial& o) const {
        if (xexp != o.xexp) return xexp < o.xexp;
        return rflag < o.rflag;
    }
    bool operator==(const Monomial& o) const { return xexp == o.xexp && rflag == o.rflag; }

    static Monomial unit(int n) { return Monomial{std::vector<int32_t>(n, 0), 0}; }
    static Monomial axis(int n, int i, int e = 1) {
        Monomial m = unit(n);
        m.xexp[i] = e;
        return m;
    }
    static Monomial radial(int n) {
        Monomial m = unit(n);
        m.rflag = 1;
        return m;
    }
};

/// Exponents of the tracked denominator atoms.
struct DenExp {
    std::array<uint32_t, ATOM_COUNT> e{};

    bool trivial() const;
    bool operator==(const DenExp& o) const { return e == o.e; }
    bool operator<(const DenExp& o) const { return e < o.e; }
};

/// Element of the function space: a Laurent polynomial in x1..xN, possibly
/// times r, over a monomial in the denominator atoms, with ParamScalar
/// coefficients. Values are immutable after construction and always held in
/// the canonical reduced form (r^2 eliminated, no zero coefficients, no
/// atom dividing the numerator exactly while carrying a positive
/// denominator exponent).
class FieldElem {
public:
    FieldElem() = default;

    static FieldElem zero(ConfigPtr cfg);
    static FieldElem one(ConfigPtr cfg);
    static FieldElem constant(ConfigPtr cfg, GaussianRational c);
    static FieldElem scalar(ConfigPtr cfg, ParamScalar s);
    /// x_i^e (Laurent: e may be negative).
    static FieldElem coordinate(ConfigPtr cfg, int i, int e = 1);
    static FieldElem radial(ConfigPtr cfg);
    static FieldElem monomialTerm(ConfigPtr cfg, Monomial m, ParamScalar c);
    /// The atom as a (numerator) polynomial.
    static FieldElem atomPoly(ConfigPtr cfg, Atom a);
    /// 1 / atom^e.
    static FieldElem atomInverse(ConfigPtr cfg, Atom a, unsigned e = 1);

    const ConfigPtr& config() const { return cfg_; }
    bool isZero() const { return num_.empty(); }
    const std::map<Monomial, ParamScalar>& num() const { return num_; }
    const DenExp& den() const { return den_; }
    size_t termCount() const { return num_.size(); }

    FieldElem operator-() const;
    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem scaled(const ParamScalar& s) const;
    FieldElem scaled(const GaussianRational& c) const;

    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    /// Formal partial derivative along axis i.
    FieldElem partial(int i) const;
    /// Sign flip x_i -> -x_i.
    FieldElem reflected(int i) const;
    /// Exact multiplication by x_i^{-1} (always exact in the Laurent ring).
    FieldElem divByX(int i) const;
    /// Evaluate parameters at rational values; collapsing atoms (kappa=0,
    /// lambda=0, eta=0) are folded. The result lives in the extended
    /// configuration cfg->with(s).
    FieldElem substituted(const Substitution& s) const;

    /// Deterministic rendering in the canonical monomial order.
    std::string str() const;

private:
    void normalize();
    void reduceAtoms();
    void foldAtomCollapse();
    FieldElem dividedByDen(const DenExp& d) const;

    ConfigPtr cfg_;
    std::map<Monomial, ParamScalar> num_;
    DenExp den_;
};

/// eq via subtraction: sound because the extension ring is a domain for the
/// admissible configurations (r requires N >= 2).
inline bool fieldEq(const FieldElem& a, const FieldElem& b) { return (a - b).isZero(); }

} // namespace dunkl
