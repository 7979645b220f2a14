#include "dunkl/operators.hpp"

#include <stdexcept>

namespace dunkl {

ParamScalar hbarScalar(const ConfigPtr& cfg) { return ParamScalar::variable(cfg->n, P_HBAR); }

ParamScalar iHbarScalar(const ConfigPtr& cfg) {
    return hbarScalar(cfg).scaled(GaussianRational::i());
}

ParamScalar muScalar(const ConfigPtr& cfg, int axis) {
    return ParamScalar::variable(cfg->n, muParam(axis));
}

NormalOp muReflSum(const ConfigPtr& cfg) {
    NormalOp s = NormalOp::zero(cfg);
    for (int i = 0; i < cfg->n; ++i) s = s + NormalOp::reflOp(cfg, i).scaled(muScalar(cfg, i));
    return s;
}

NormalOp atomicOperator(const ConfigPtr& cfg, AtomicKind kind, int axis) {
    if (axis < 0 || axis >= cfg->n) throw std::out_of_range("atomicOperator: axis");
    switch (kind) {
    case AtomicKind::Position: return NormalOp::mulBy(FieldElem::coordinate(cfg, axis));
    case AtomicKind::Momentum: return NormalOp::partialOp(cfg, axis).scaled(-iHbarScalar(cfg));
    case AtomicKind::Reflection: return NormalOp::reflOp(cfg, axis);
    }
    throw std::logic_error("atomicOperator: bad kind");
}

NormalOp dunklDerivative(const ConfigPtr& cfg, int axis) {
    if (axis < 0 || axis >= cfg->n) throw std::out_of_range("dunklDerivative: axis");
    FieldElem muOverX = FieldElem::coordinate(cfg, axis, -1).scaled(muScalar(cfg, axis));
    return NormalOp::partialOp(cfg, axis) + NormalOp::mulBy(muOverX) -
           NormalOp::mulBy(muOverX) * NormalOp::reflOp(cfg, axis);
}

NormalOp dunklMomentum(const ConfigPtr& cfg, int axis) {
    return dunklDerivative(cfg, axis).scaled(-iHbarScalar(cfg));
}

NormalOp angMomentum(const ConfigPtr& cfg, int i, int j) {
    if (i == j) throw std::invalid_argument("angMomentum: indices must differ");
    NormalOp xi = atomicOperator(cfg, AtomicKind::Position, i);
    NormalOp xj = atomicOperator(cfg, AtomicKind::Position, j);
    return xi * dunklMomentum(cfg, j) - xj * dunklMomentum(cfg, i);
}

NormalOp totalLambdaSq(const ConfigPtr& cfg) {
    if (cfg->n < 2) throw std::invalid_argument("totalLambdaSq: requires N >= 2");
    NormalOp s = NormalOp::zero(cfg);
    for (int i = 0; i < cfg->n; ++i)
        for (int j = i + 1; j < cfg->n; ++j) {
            NormalOp lam = angMomentum(cfg, i, j);
            s = s + lam * lam;
        }
    return s;
}

NormalOp piSquared(const ConfigPtr& cfg) {
    NormalOp s = NormalOp::zero(cfg);
    for (int i = 0; i < cfg->n; ++i) {
        NormalOp pi = dunklMomentum(cfg, i);
        s = s + pi * pi;
    }
    return s;
}

NormalOp xDotPi(const ConfigPtr& cfg) {
    NormalOp s = NormalOp::zero(cfg);
    for (int i = 0; i < cfg->n; ++i)
        s = s + atomicOperator(cfg, AtomicKind::Position, i) * dunklMomentum(cfg, i);
    return s;
}

NormalOp curvedMomentum(const ConfigPtr& cfg, int axis) {
    if (axis < 0 || axis >= cfg->n) throw std::out_of_range("curvedMomentum: axis");
    ParamScalar kappa = ParamScalar::variable(cfg->n, P_KAPPA);
    FieldElem oneMinusKS =
        FieldElem::one(cfg) - FieldElem::atomPoly(cfg, A_S).scaled(kappa);
    NormalOp first = NormalOp::mulBy(oneMinusKS) * dunklMomentum(cfg, axis);
    NormalOp paren = xDotPi(cfg) - muReflSum(cfg).scaled(iHbarScalar(cfg));
    NormalOp second = NormalOp::mulBy(FieldElem::coordinate(cfg, axis).scaled(
                          kappa.scaled(GaussianRational(2)))) *
                      paren;
    return first + second;
}

NormalOp centrifugalTerm(const ConfigPtr& cfg, int axis) {
    NormalOp t = NormalOp::zero(cfg);
    FieldElem invX2 = FieldElem::coordinate(cfg, axis, -2);
    if (cfg->betaOn[axis])
        t = t + NormalOp::mulBy(
                    invX2.scaled(ParamScalar::variable(cfg->n, betaParam(cfg->n, axis))));
    if (cfg->gammaOn[axis])
        t = t + NormalOp::mulBy(invX2.scaled(
                    ParamScalar::variable(cfg->n, gammaParam(cfg->n, axis)))) *
                    NormalOp::reflOp(cfg, axis);
    return t;
}

Sl2Triple sl2Realization(const ConfigPtr& cfg, int first, int last) {
    if (first < 0 || last >= cfg->n || first > last)
        throw std::invalid_argument("sl2Realization: bad site range");
    Sl2Triple t{NormalOp::zero(cfg), NormalOp::zero(cfg), NormalOp::zero(cfg)};
    const int m = last - first + 1;
    for (int i = first; i <= last; ++i) {
        NormalOp pi = dunklMomentum(cfg, i);
        t.jPlus = t.jPlus + pi * pi + centrifugalTerm(cfg, i);
        t.jMinus = t.jMinus + NormalOp::mulBy(FieldElem::coordinate(cfg, i, 2));
        t.j3 = t.j3 + atomicOperator(cfg, AtomicKind::Position, i) * pi -
               NormalOp::reflOp(cfg, i).scaled(iHbarScalar(cfg) * muScalar(cfg, i));
    }
    t.j3 = t.j3 - NormalOp::identity(cfg).scaled(
                      iHbarScalar(cfg).scaled(GaussianRational(m, 2)));
    return t;
}

NormalOp seedCasimir(const Sl2Triple& t) {
    NormalOp sym = t.jPlus * t.jMinus + t.jMinus * t.jPlus;
    return sym.scaled(GaussianRational(1, 2)) - t.j3 * t.j3;
}

namespace {

CasimirParts casimirOnRange(const ConfigPtr& cfg, int first, int last) {
    CasimirParts out{NormalOp::zero(cfg), NormalOp::zero(cfg), NormalOp::zero(cfg)};
    out.full = seedCasimir(sl2Realization(cfg, first, last));
    const int n = cfg->n;
    const int m = last - first + 1;
    // momentum part: sum_{i<j} (Lambda_ij^2 + (b_i + g_i R_i) x_j^2/x_i^2
    //                                      + (b_j + g_j R_j) x_i^2/x_j^2)
    //                + sum_i (b_i + g_i R_i)
    for (int i = first; i <= last; ++i) {
        for (int j = i + 1; j <= last; ++j) {
            NormalOp lam = angMomentum(cfg, i, j);
            NormalOp cross =
                centrifugalTerm(cfg, i) * NormalOp::mulBy(FieldElem::coordinate(cfg, j, 2)) +
                centrifugalTerm(cfg, j) * NormalOp::mulBy(FieldElem::coordinate(cfg, i, 2));
            out.momentumPart = out.momentumPart + lam * lam + cross;
        }
        out.momentumPart =
            out.momentumPart +
            centrifugalTerm(cfg, i) * NormalOp::mulBy(FieldElem::coordinate(cfg, i, 2));
    }
    // reflection part: m(m-4)/4 + sum_i mu_i (mu_i + (m-2) R_i)
    //                  + 2 sum_{i<j} mu_i mu_j R_i R_j
    NormalOp refl = NormalOp::identity(cfg).scaled(
        ParamScalar::constant(n, GaussianRational(long(m) * (m - 4), 4)));
    for (int i = first; i <= last; ++i) {
        ParamScalar mu = muScalar(cfg, i);
        refl = refl + NormalOp::identity(cfg).scaled(mu * mu) +
               NormalOp::reflOp(cfg, i).scaled(mu.scaled(GaussianRational(m - 2)));
        for (int j = i + 1; j <= last; ++j)
            refl = refl + (NormalOp::reflOp(cfg, i) * NormalOp::reflOp(cfg, j))
                              .scaled((mu * muScalar(cfg, j)).scaled(GaussianRational(2)));
    }
    out.reflectionPart = refl;
    return out;
}

} // namespace

CasimirParts leftCasimir(const ConfigPtr& cfg, int m) {
    if (m < 1 || m > cfg->n) throw std::out_of_range("leftCasimir: m out of range");
    return casimirOnRange(cfg, 0, m - 1);
}

CasimirParts rightCasimir(const ConfigPtr& cfg, int m) {
    if (m < 1 || m > cfg->n) throw std::out_of_range("rightCasimir: m out of range");
    return casimirOnRange(cfg, cfg->n - m, cfg->n - 1);
}

} // namespace dunkl
