#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dunkl/opalg.hpp"

#include <random>

using namespace dunkl;

namespace {

ConfigPtr cfg2() { return SiteConfig::make(2, true, true); }

FieldElem X(const ConfigPtr& c, int i, int e = 1) { return FieldElem::coordinate(c, i, e); }

ParamScalar iHbar(const ConfigPtr& c) {
    return ParamScalar::variable(c->n, P_HBAR).scaled(GaussianRational::i());
}

// Dunkl momentum pi_i = -i hbar (d_i + mu_i/x_i (1 - R_i)) assembled by hand
// from atomic terms; the operators module builds the same thing later.
NormalOp piOp(const ConfigPtr& c, int i) {
    ParamScalar mih = -iHbar(c);
    ParamScalar mu = ParamScalar::variable(c->n, muParam(i));
    NormalOp del = NormalOp::partialOp(c, i).scaled(mih);
    FieldElem overX = X(c, i, -1).scaled(mih * mu);
    NormalOp rest = NormalOp::mulBy(overX) - NormalOp::mulBy(overX) * NormalOp::reflOp(c, i);
    return del + rest;
}

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}
    int range(int lo, int hi) { return lo + int(eng() % uint64_t(hi - lo + 1)); }

    FieldElem elem(const ConfigPtr& cfg) {
        FieldElem f = FieldElem::zero(cfg);
        int terms = range(1, 2);
        for (int t = 0; t < terms; ++t) {
            Monomial m = Monomial::unit(cfg->n);
            for (int ax = 0; ax < cfg->n; ++ax) m.xexp[ax] = range(-1, 2);
            m.rflag = cfg->rEnabled && range(0, 2) == 0 ? 1 : 0;
            int num = range(-3, 3);
            if (num == 0) num = 1;
            GaussianRational c{mpq_class(num), mpq_class(range(0, 3) == 0 ? 1 : 0)};
            f = f + FieldElem::monomialTerm(cfg, m, ParamScalar::constant(cfg->n, c));
        }
        return f;
    }

    OperatorExpr::Ptr ast(const ConfigPtr& cfg, int depth) {
        int pick = depth <= 0 ? range(0, 3) : range(0, 5);
        switch (pick) {
        case 0: return OperatorExpr::identity(cfg);
        case 1: return OperatorExpr::mulBy(elem(cfg));
        case 2: return OperatorExpr::del(cfg, range(0, cfg->n - 1));
        case 3: return OperatorExpr::refl(cfg, range(0, cfg->n - 1));
        case 4: {
            std::vector<OperatorExpr::Ptr> parts;
            int k = range(2, 3);
            for (int t = 0; t < k; ++t) parts.push_back(ast(cfg, depth - 1));
            return OperatorExpr::sum(std::move(parts));
        }
        default: {
            std::vector<OperatorExpr::Ptr> parts;
            int k = range(2, 3);
            for (int t = 0; t < k; ++t) parts.push_back(ast(cfg, depth - 1));
            return OperatorExpr::prod(std::move(parts));
        }
        }
    }

    NormalOp op(const ConfigPtr& cfg) { return normalize(ast(cfg, 2)); }
};

} // namespace

TEST_CASE("normalization of basic words") {
    auto c = cfg2();
    // d1 o x1 = x1 d1 + 1
    NormalOp w = NormalOp::partialOp(c, 0) * NormalOp::mulBy(X(c, 0));
    CHECK(w.termCount() == 2);
    OpKey unit = OpKey::unit(2);
    OpKey d1 = unit;
    d1.deriv[0] = 1;
    CHECK(w.terms().at(unit) == FieldElem::one(c));
    CHECK(w.terms().at(d1) == X(c, 0));
    // R1 d1 + d1 R1 = 0
    NormalOp r1 = NormalOp::reflOp(c, 0), dd = NormalOp::partialOp(c, 0);
    CHECK((r1 * dd + dd * r1).isZero());
    // R1 R1 = identity
    CHECK(r1 * r1 == NormalOp::identity(c));
    // R1 o x1 = -x1 R1
    CHECK(r1 * NormalOp::mulBy(X(c, 0)) == NormalOp::mulBy(-X(c, 0)) * r1);
}

TEST_CASE("product against AST normalization on random pairs") {
    auto c = cfg2();
    Rng rng(99);
    for (int it = 0; it < 200; ++it) {
        auto ea = rng.ast(c, 2);
        auto eb = rng.ast(c, 2);
        NormalOp both = normalize(OperatorExpr::prod({ea, eb}));
        CHECK(both == normalize(ea) * normalize(eb));
    }
}

TEST_CASE("application respects composition") {
    auto c = cfg2();
    Rng rng(1234);
    for (int it = 0; it < 80; ++it) {
        NormalOp a = rng.op(c), b = rng.op(c);
        FieldElem f = rng.elem(c);
        CHECK((a * b).apply(f) == a.apply(b.apply(f)));
    }
}

TEST_CASE("commutator is antisymmetric and satisfies Jacobi") {
    auto c = cfg2();
    Rng rng(31337);
    for (int it = 0; it < 100; ++it) {
        NormalOp a = rng.op(c), b = rng.op(c), d = rng.op(c);
        CHECK(commutator(a, b) == -commutator(b, a));
        NormalOp jac = commutator(a, commutator(b, d)) + commutator(b, commutator(d, a)) +
                       commutator(d, commutator(a, b));
        CHECK(jac.isZero());
        CHECK(commutator(a, a).isZero());
    }
}

TEST_CASE("canonical commutation with the Dunkl momentum") {
    auto c = cfg2();
    NormalOp x1 = NormalOp::mulBy(X(c, 0));
    NormalOp pi1 = piOp(c, 0), pi2 = piOp(c, 1);
    // [x1, pi1] = i hbar (1 + 2 mu1 R1)
    ParamScalar ih = iHbar(c);
    ParamScalar mu1 = ParamScalar::variable(c->n, muParam(0));
    NormalOp expect = NormalOp::identity(c).scaled(ih) +
                      NormalOp::reflOp(c, 0).scaled(ih * mu1.scaled(GaussianRational(2)));
    CHECK(commutator(x1, pi1) == expect);
    CHECK(commutator(pi1, pi2).isZero());
    CHECK(commutator(x1, pi2).isZero());
    // anticommutator {x1 pi2 - x2 pi1, R1} = 0
    NormalOp lam = x1 * pi2 - NormalOp::mulBy(X(c, 1)) * pi1;
    CHECK(anticommutator(lam, NormalOp::reflOp(c, 0)).isZero());
    // [x1, R1] = 2 x1 R1
    NormalOp r1 = NormalOp::reflOp(c, 0);
    CHECK(commutator(x1, r1) == (x1 * r1).scaled(GaussianRational(2)));
}

TEST_CASE("application of the Dunkl momentum") {
    auto c = cfg2();
    NormalOp pi1 = piOp(c, 0);
    ParamScalar mih = -iHbar(c);
    ParamScalar mu1 = ParamScalar::variable(c->n, muParam(0));
    // pi1 x1 = -i hbar (1 + 2 mu1)
    FieldElem expect = FieldElem::scalar(c, mih + mih * mu1.scaled(GaussianRational(2)));
    CHECK(pi1.apply(X(c, 0)) == expect);
    CHECK(pi1.apply(X(c, 1)).isZero());
    // even function kills the reflection part
    CHECK(pi1.apply(X(c, 0, 2)) == X(c, 0).scaled(mih.scaled(GaussianRational(2))));
}

TEST_CASE("dual-path evaluation: normal product vs probe application") {
    auto c = cfg2();
    Rng rng(5150);
    std::vector<FieldElem> monos;
    for (int it = 0; it < 100; ++it) monos.push_back(rng.elem(c));
    NormalOp a = NormalOp::zero(c), b = NormalOp::zero(c);
    for (int i = 0; i < 4; ++i) {
        OpKey k = OpKey::unit(2);
        k.deriv[0] = uint32_t(rng.range(0, 2));
        k.deriv[1] = uint32_t(rng.range(0, 2));
        k.refl[0] = uint8_t(rng.range(0, 1));
        (i % 2 ? a : b).insert(k, rng.elem(c));
    }
    NormalOp ab = a * b;
    for (const auto& f : monos) CHECK(ab.apply(f) == a.apply(b.apply(f)));
}

TEST_CASE("zero detection") {
    auto c = cfg2();
    CHECK_FALSE(NormalOp::identity(c).isZero());
    NormalOp pi1 = piOp(c, 0), pi2 = piOp(c, 1);
    CHECK(commutator(pi1, pi2).isZero());
    NormalOp x1 = NormalOp::mulBy(X(c, 0)), r1 = NormalOp::reflOp(c, 0);
    CHECK((commutator(x1, r1) - (x1 * r1).scaled(GaussianRational(2))).isZero());
}

TEST_CASE("term budget aborts oversized products") {
    auto c = cfg2();
    NormalOp a = NormalOp::partialOp(c, 0) + NormalOp::partialOp(c, 1) + NormalOp::reflOp(c, 0) +
                 NormalOp::reflOp(c, 1) + NormalOp::mulBy(X(c, 0));
    REQUIRE((a * a).termCount() > 2);
    TermBudgetGuard guard(2);
    CHECK_THROWS_AS((void)(a * a), TermBudgetExceeded);
}

TEST_CASE("renderings are deterministic and keyed") {
    auto c = cfg2();
    NormalOp pi1 = piOp(c, 0);
    CHECK(pi1.str() == piOp(c, 0).str());
    CHECK(NormalOp::zero(c).str() == "0");
    CHECK(NormalOp::identity(c).str() == "1 | 1");
}
