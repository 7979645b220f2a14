#pragma once

#include "dunkl/opalg.hpp"

namespace dunkl {

/// sl(2,R) triple in the differential-difference realization; satisfies
/// [J-, J+] = 4 i hbar J3 and [J3, J+-] = +-2 i hbar J+- exactly.
struct Sl2Triple {
    NormalOp jPlus, jMinus, j3;
};

/// Full and split forms of a realized partial Casimir:
/// full = momentumPart + hbar^2 * reflectionPart.
struct CasimirParts {
    NormalOp full;
    NormalOp momentumPart;   // quadratic in the Dunkl momenta
    NormalOp reflectionPart; // reflections and constants only
};

enum class AtomicKind { Position, Momentum, Reflection };

/// x_i, p_i = -i hbar d_i, or R_i.
NormalOp atomicOperator(const ConfigPtr& cfg, AtomicKind kind, int axis);

/// Dunkl derivative D_i = d_i + mu_i/x_i (1 - R_i) (no -i hbar factor).
NormalOp dunklDerivative(const ConfigPtr& cfg, int axis);
/// Dunkl momentum pi_i = -i hbar D_i.
NormalOp dunklMomentum(const ConfigPtr& cfg, int axis);
/// Dunkl angular momentum Lambda_ij = x_i pi_j - x_j pi_i; requires i != j.
NormalOp angMomentum(const ConfigPtr& cfg, int i, int j);
/// Sum of squares Lambda^2 = sum_{i<j} Lambda_ij^2; requires N >= 2.
NormalOp totalLambdaSq(const ConfigPtr& cfg);
/// pi^2 = sum_i pi_i^2.
NormalOp piSquared(const ConfigPtr& cfg);
/// x.pi = sum_i x_i pi_i.
NormalOp xDotPi(const ConfigPtr& cfg);
/// Curved momentum Gamma_i = (1 - kappa x^2) pi_i
///                          + 2 kappa x_i (x.pi - i hbar sum_j mu_j R_j).
NormalOp curvedMomentum(const ConfigPtr& cfg, int axis);

/// N-site generators restricted to a contiguous site range [first, last]
/// (inclusive, 0-based). Beta/gamma terms follow the configuration flags.
Sl2Triple sl2Realization(const ConfigPtr& cfg, int first, int last);
inline Sl2Triple sl2Realization(const ConfigPtr& cfg) {
    return sl2Realization(cfg, 0, cfg->n - 1);
}

/// C = (J+ J- + J- J+)/2 - J3^2.
NormalOp seedCasimir(const Sl2Triple& t);

/// Left partial Casimir on sites 1..m and right partial Casimir on sites
/// N-m+1..N, 1 <= m <= N (m = 1 is the degenerate non-polynomial case).
CasimirParts leftCasimir(const ConfigPtr& cfg, int m);
CasimirParts rightCasimir(const ConfigPtr& cfg, int m);

/// beta_i + gamma_i R_i over x_i^2, honoring the activity flags; zero when
/// both are disabled.
NormalOp centrifugalTerm(const ConfigPtr& cfg, int axis);

/// Convenience scalars.
ParamScalar hbarScalar(const ConfigPtr& cfg);
ParamScalar iHbarScalar(const ConfigPtr& cfg);
ParamScalar muScalar(const ConfigPtr& cfg, int axis);
/// sum_i mu_i R_i as an operator.
NormalOp muReflSum(const ConfigPtr& cfg);

} // namespace dunkl
