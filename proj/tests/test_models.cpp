#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dunkl/models.hpp"

using namespace dunkl;

namespace {

Substitution zeroOf(std::initializer_list<int> ids) {
    Substitution s;
    for (int id : ids) s[id] = 0;
    return s;
}

} // namespace

TEST_CASE("catalog") {
    CHECK(listModels().size() == 12);
    auto qgen = modelInfo(Model::QGenKC);
    CHECK(qgen.betaGammaSites == -2);
    CHECK(qgen.kcFamily);
    CHECK(modelByName("taubnut").has_value());
    CHECK_FALSE(modelByName("nope").has_value());
    // quasi-generalized specs disable the last beta/gamma
    ModelSpec spec = ModelSpec::make(Model::QGenKC, 3);
    CHECK(spec.config->betaOn[0]);
    CHECK_FALSE(spec.config->betaOn[2]);
    CHECK_FALSE(spec.config->gammaOn[2]);
    CHECK(modelInfo(Model::Osc).extraIntegralCount(3) == 6);
    CHECK(modelInfo(Model::QGenTaubNUT).extraIntegralCount(3) == 1);
}

TEST_CASE("KC family requires N >= 2") {
    for (Model m : {Model::KC, Model::QGenKC, Model::CurvedKC, Model::QGenCurvedKC,
                    Model::TaubNUT, Model::QGenTaubNUT})
        CHECK_THROWS_WITH_AS((void)ModelSpec::make(m, 1), "KC-family requires N >= 2",
                             std::invalid_argument);
    CHECK_NOTHROW((void)ModelSpec::make(Model::Osc, 1));
}

TEST_CASE("oscillator Hamiltonian acts as expected on constants") {
    ModelSpec spec = ModelSpec::make(Model::Osc, 2);
    NormalOp h = buildHamiltonian(spec);
    auto c = spec.config;
    // kinetic term kills constants; H(1) = omega^2/2 (x1^2 + x2^2)
    FieldElem expect = FieldElem::atomPoly(c, A_S).scaled(
        (ParamScalar::variable(c->n, P_OMEGA).pow(2)).scaled(GaussianRational(1, 2)));
    CHECK(h.apply(FieldElem::one(c)) == expect);
}

TEST_CASE("flat and undeformed limits recover the base models") {
    const int n = 2;
    // DarbouxIII -> Osc under lambda -> 0
    {
        NormalOp d3 = buildHamiltonian(ModelSpec::make(Model::DarbouxIII, n));
        NormalOp osc = buildHamiltonian(ModelSpec::make(Model::Osc, n, {{P_LAMBDA, 0}}));
        CHECK(d3.substituted({{P_LAMBDA, 0}}) == osc);
    }
    // TaubNUT -> KC under eta -> 0
    {
        NormalOp tn = buildHamiltonian(ModelSpec::make(Model::TaubNUT, n));
        NormalOp kc = buildHamiltonian(ModelSpec::make(Model::KC, n, {{P_ETA, 0}}));
        CHECK(tn.substituted({{P_ETA, 0}}) == kc);
    }
    // Higgs -> Osc under kappa -> 0
    {
        NormalOp hg = buildHamiltonian(ModelSpec::make(Model::Higgs, n));
        NormalOp osc = buildHamiltonian(ModelSpec::make(Model::Osc, n, {{P_KAPPA, 0}}));
        CHECK(hg.substituted({{P_KAPPA, 0}}) == osc);
    }
    // CurvedKC -> KC under kappa -> 0
    {
        NormalOp ck = buildHamiltonian(ModelSpec::make(Model::CurvedKC, n));
        NormalOp kc = buildHamiltonian(ModelSpec::make(Model::KC, n, {{P_KAPPA, 0}}));
        CHECK(ck.substituted({{P_KAPPA, 0}}) == kc);
    }
    // GenDarbouxIII -> SW under lambda -> 0
    {
        NormalOp gd = buildHamiltonian(ModelSpec::make(Model::GenDarbouxIII, n));
        NormalOp sw = buildHamiltonian(ModelSpec::make(Model::SW, n, {{P_LAMBDA, 0}}));
        CHECK(gd.substituted({{P_LAMBDA, 0}}) == sw);
    }
}

TEST_CASE("oscillator family: tensors commute and the trace identity holds") {
    ModelSpec spec = ModelSpec::make(Model::Osc, 2);
    ModelBundle b = buildModel(spec);
    CHECK(b.extraIntegrals.size() == 3);
    for (const auto& [label, f] : b.extraIntegrals) {
        CAPTURE(label);
        CHECK(commutator(b.hamiltonian, f).isZero());
    }
    for (const auto& [label, cInt] : b.universalIntegrals) {
        CAPTURE(label);
        CHECK(commutator(b.hamiltonian, cInt).isZero());
    }
    auto ids = decompositionIdentities(spec);
    REQUIRE(ids.size() == 1);
    CHECK(ids[0].lhs == ids[0].rhs);
}

TEST_CASE("Higgs integrals collapse to the flat tensor diagonal at kappa = 0") {
    const int n = 2;
    ModelSpec higgs = ModelSpec::make(Model::Higgs, n);
    ModelBundle hb = buildModel(higgs);
    ModelSpec osc = ModelSpec::make(Model::Osc, n, {{P_KAPPA, 0}});
    ModelBundle ob = buildModel(osc);
    for (int i = 0; i < n; ++i) {
        NormalOp flatI = hb.extraIntegrals[i].second.substituted({{P_KAPPA, 0}});
        // I_i^(0) = 1/2 F_ii
        std::string tag = "F" + std::to_string(i + 1) + std::to_string(i + 1);
        for (const auto& [label, f] : ob.extraIntegrals)
            if (label == tag) CHECK(flatI == f.scaled(GaussianRational(1, 2)));
    }
}

TEST_CASE("KC: LRL components commute with H and satisfy the functional relation") {
    ModelSpec spec = ModelSpec::make(Model::KC, 2);
    ModelBundle b = buildModel(spec);
    REQUIRE(b.extraIntegrals.size() == 2);
    for (const auto& [label, a] : b.extraIntegrals) {
        CAPTURE(label);
        CHECK(commutator(b.hamiltonian, a).isZero());
    }
    auto ids = decompositionIdentities(spec);
    REQUIRE(ids.size() == 1);
    CHECK(ids[0].label == "functional-relation");
    CHECK(ids[0].lhs == ids[0].rhs);
}

TEST_CASE("QGen integrals reduce to the plain LRL component as beta, gamma -> 0") {
    const int n = 2;
    ModelSpec qg = ModelSpec::make(Model::QGenKC, n);
    ModelBundle qb = buildModel(qg);
    Substitution zero = zeroOf({betaParam(n, 0), gammaParam(n, 0)});
    ModelSpec kc = ModelSpec::make(Model::KC, n, zero);
    ModelBundle kb = buildModel(kc);
    REQUIRE(qb.extraIntegrals.size() == 1);
    CHECK(qb.extraIntegrals[0].second.substituted(zero) == kb.extraIntegrals[n - 1].second);
}

TEST_CASE("mu and gamma -> 0 removes every reflection term") {
    const int n = 2;
    Substitution zero;
    for (int i = 0; i < n; ++i) {
        zero[muParam(i)] = 0;
        zero[gammaParam(n, i)] = 0;
    }
    for (Model m : {Model::SW, Model::TaubNUT}) {
        ModelSpec spec = ModelSpec::make(m, n);
        NormalOp h = buildHamiltonian(spec).substituted(zero);
        CHECK(h.reflectionFree());
    }
}

TEST_CASE("decomposition identities at N = 2 for the remaining families") {
    for (Model m : {Model::SW, Model::DarbouxIII, Model::GenDarbouxIII}) {
        ModelSpec spec = ModelSpec::make(m, 2);
        auto ids = decompositionIdentities(spec);
        REQUIRE(ids.size() == 1);
        CAPTURE(modelInfo(m).name);
        CHECK(ids[0].lhs == ids[0].rhs);
    }
}
