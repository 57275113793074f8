#include "fibratrix/gcd.hpp"
#include "fibratrix/parse.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace fibratrix;

namespace {
const RingSpec TRI{RingKind::Triangular};
const RingSpec TEN{RingKind::Tensor};

MultiPoly P(const std::string& s, const Field& f = field_q()) {
    return parse_poly(TRI, f, s);
}

MultiPoly random_homog(std::mt19937_64& rng, const Field& f, long deg) {
    std::uniform_int_distribution<int> coef(-4, 4);
    MultiPoly p(TRI, f);
    for (const auto& m : monomial_basis(TRI, Deg::single(deg)))
        p.add_term(m, FieldElem::of(f, coef(rng)));
    if (p.is_zero()) p.add_term(monomial_basis(TRI, Deg::single(deg))[0],
                                FieldElem::one(f));
    return p;
}
}  // namespace

TEST_CASE("gcd on pinned examples") {
    // shifted sphere forms at a point with a line fiber share exactly s0
    MultiPoly z = MultiPoly::zero(TRI, field_q());
    REQUIRE(multivariate_gcd({z, P("2*s0*s2"), P("2*s0*s1"), P("2*s0^2")}) == P("s0"));
    // ... and at a point with a single preimage they share nothing
    REQUIRE(multivariate_gcd({P("2*s0*s2"), P("2*s0*s1"), P("-2*s1^2-2*s2^2")}) ==
            P("1"));
    REQUIRE(multivariate_gcd({P("s0^2-s1^2"), P("s0^2+2*s0*s1+s1^2")}) == P("s0+s1"));
    REQUIRE(multivariate_gcd({P("6"), P("4")}) == P("1"));
    REQUIRE(multivariate_gcd({z, P("3*s1*s2")}) == P("s1*s2"));
    REQUIRE_THROWS_AS(multivariate_gcd({z, z}), MathError);
}

TEST_CASE("gcd normalization is monic in the graded-lex leading term") {
    MultiPoly g = multivariate_gcd({P("-2*s0^2-2*s0*s1"), P("4*s0*s1+4*s1^2")});
    REQUIRE(g == P("s0+s1"));
    REQUIRE(g.leading().second.is_one());
}

TEST_CASE("gcd of scaled inputs is unchanged") {
    MultiPoly a = P("s0^2-s2^2"), b = P("s0*s1+s1*s2");
    Field q = field_q();
    MultiPoly g1 = multivariate_gcd({a, b});
    MultiPoly g2 = multivariate_gcd({a.scaled(FieldElem::of(q, -7)),
                                     b.scaled(parse_scalar(q, "3/5"))});
    REQUIRE(g1 == g2);
    REQUIRE(g1 == P("s0+s2"));
}

TEST_CASE("divide_exact detects non-divisibility") {
    REQUIRE(divide_exact(P("s0^2-s1^2"), P("s0-s1")).value() == P("s0+s1"));
    REQUIRE(!divide_exact(P("s0^2-s1^2"), P("s0-s2")).has_value());
    REQUIRE_THROWS_AS(divide_exact(P("s0"), MultiPoly::zero(TRI, field_q())),
                      MathError);
}

TEST_CASE("gcd divides inputs and recovers planted factors") {
    Field q = field_q();
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> dd(1, 2);
    for (int trial = 0; trial < 40; ++trial) {
        MultiPoly m = random_homog(rng, q, dd(rng));
        MultiPoly a = random_homog(rng, q, dd(rng)) * m;
        MultiPoly b = random_homog(rng, q, dd(rng)) * m;
        MultiPoly g = multivariate_gcd({a, b});
        // the planted factor divides the gcd, and the gcd divides both inputs
        REQUIRE(divide_exact(g, normalize_monic(m)).has_value());
        REQUIRE(divide_exact(a, g).has_value());
        REQUIRE(divide_exact(b, g).has_value());
        REQUIRE(g.homogeneous_degree().has_value());
    }
}

TEST_CASE("gcd over a prime field") {
    Field fp = field_fp(101);
    MultiPoly a = parse_poly(TRI, fp, "s0^2-s1^2");
    MultiPoly b = parse_poly(TRI, fp, "s0^2+2*s0*s1+s1^2");
    REQUIRE(multivariate_gcd({a, b}) == parse_poly(TRI, fp, "s0+s1"));
}

TEST_CASE("gcd in the tensor ring") {
    Field q = field_q();
    // a = (s0+s1)*t0*t1, b = (s0+s1)*s0*t1
    MultiPoly a = parse_poly(TEN, q, "s0*t0*t1 + s1*t0*t1");
    MultiPoly b = parse_poly(TEN, q, "s0^2*t1 + s0*s1*t1");
    REQUIRE(multivariate_gcd({a, b}) == parse_poly(TEN, q, "s0*t1 + s1*t1"));
}
