#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dunkl/models.hpp"
#include "dunkl/parser.hpp"

using namespace dunkl;

TEST_CASE("the oscillator expression lowers to the oscillator Hamiltonian") {
    // beta/gamma disabled so that Jp matches the plain Dunkl realization
    auto cfg = SiteConfig::make(2, false, false);
    auto ast = parseOperatorExpr("1/2 * Jp + omega^2 * 1/2 * Jm", cfg);
    NormalOp h = lower(ast, cfg);
    ModelSpec osc = ModelSpec::make(Model::Osc, 2);
    CHECK(h == buildHamiltonian(osc));
}

TEST_CASE("products are noncommutative in written order") {
    auto cfg = SiteConfig::make(2, false, false);
    NormalOp ab = lower(parseOperatorExpr("pi1*x1", cfg), cfg);
    NormalOp ba = lower(parseOperatorExpr("x1*pi1", cfg), cfg);
    CHECK(ab == dunklMomentum(cfg, 0) * NormalOp::mulBy(FieldElem::coordinate(cfg, 0)));
    CHECK(ab != ba);
    NormalOp sq = lower(parseOperatorExpr("pi1*pi1", cfg), cfg);
    CHECK(sq == dunklMomentum(cfg, 0) * dunklMomentum(cfg, 0));
    CHECK(sq == lower(parseOperatorExpr("pi1^2", cfg), cfg));
}

TEST_CASE("scalars, parameters and the imaginary unit") {
    auto cfg = SiteConfig::make(2, false, false);
    NormalOp v = lower(parseOperatorExpr("3/4 * i * hbar * R1", cfg), cfg);
    NormalOp expect = NormalOp::reflOp(cfg, 0).scaled(
        iHbarScalar(cfg).scaled(GaussianRational(3, 4)));
    CHECK(v == expect);
    CHECK(lower(parseOperatorExpr("x1 - x1", cfg), cfg).isZero());
    CHECK(lower(parseOperatorExpr("-x1 + x1", cfg), cfg).isZero());
}

TEST_CASE("inv() accepts atoms and coordinates, within range") {
    auto cfg = SiteConfig::make(2, true, false);
    NormalOp invs = lower(parseOperatorExpr("inv(S)", cfg), cfg);
    CHECK(invs == NormalOp::mulBy(FieldElem::atomInverse(cfg, A_S)));
    NormalOp invx = lower(parseOperatorExpr("inv(x2)", cfg), cfg);
    CHECK(invx == NormalOp::mulBy(FieldElem::coordinate(cfg, 1, -1)));
    CHECK(lower(parseOperatorExpr("r*r - x1^2 - x2^2", cfg), cfg).isZero());
    CHECK_THROWS_AS((void)parseOperatorExpr("inv(x3)", cfg), ParseError);
    CHECK_THROWS_AS((void)parseOperatorExpr("inv(foo)", cfg), ParseError);
}

TEST_CASE("errors carry positions") {
    auto cfg = SiteConfig::make(2, false, false);
    try {
        (void)parseOperatorExpr("x1 + ", cfg);
        FAIL("expected error");
    } catch (const ParseError& e) {
        CHECK(e.position == 5);
    }
    CHECK_THROWS_AS((void)parseOperatorExpr("zeta1", cfg), ParseError);
    CHECK_THROWS_AS((void)parseOperatorExpr("x9", cfg), ParseError);
    CHECK_THROWS_AS((void)parseOperatorExpr("x1 ++ x2", cfg), ParseError);
    CHECK_THROWS_AS((void)parseOperatorExpr("(x1", cfg), ParseError);
    CHECK_THROWS_AS((void)parseOperatorExpr("x1 x2", cfg), ParseError);
    CHECK_THROWS_AS((void)parseOperatorExpr("r", cfg), ParseError); // r disabled here
}

TEST_CASE("parse-render-parse is the identity") {
    auto cfg = SiteConfig::make(3, true, true);
    for (const char* src :
         {"1/2 * Jp + omega^2 * 1/2 * Jm", "pi1*pi1 + beta1*inv(x1)^2", "-x1*p2 + x2*p1",
          "(x1 + x2)^2 * R3", "i*hbar*(J3 - Jm)*inv(S)", "r*inv(Qeta)*pi3",
          "2/3 - mu1*R1*pi1^3"}) {
        CAPTURE(src);
        auto a = parseOperatorExpr(src, cfg);
        auto b = parseOperatorExpr(render(a), cfg);
        CHECK(astEqual(a, b));
        CHECK(lower(a, cfg) == lower(b, cfg));
    }
}

TEST_CASE("universal integrals commute with a parsed Hamiltonian") {
    // an arbitrary F(J+, J-, J3): not one of the named models
    auto cfg = SiteConfig::make(2, false, true);
    auto ast = parseOperatorExpr("Jp*Jm + Jm*Jp + J3^2 + omega^2*Jm", cfg);
    NormalOp h = lower(ast, cfg);
    for (int m = 2; m <= 2; ++m) {
        CHECK(commutator(leftCasimir(cfg, m).momentumPart, h).isZero());
        CHECK(commutator(leftCasimir(cfg, m).full, h).isZero());
    }
}
