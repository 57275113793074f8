#include "fibratrix/fitting.hpp"

#include "fibratrix/gcd.hpp"
#include "fibratrix/parse.hpp"
#include "fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <utility>
#include <vector>

using namespace fibratrix;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;

namespace {

std::vector<MultiPoly> values_of(const FittingGens& out) {
    std::vector<MultiPoly> v;
    for (const auto& g : out.minors) v.push_back(g.value);
    return v;
}

// One row of graded coefficients per polynomial; all inputs must be
// homogeneous of the given degree.
ExactMatrix coeff_rows(const std::vector<MultiPoly>& polys, const Deg& deg) {
    REQUIRE(!polys.empty());
    const auto basis = monomial_basis(polys.front().ring(), deg);
    MonoIndex index(basis);
    ExactMatrix m(polys.size(), basis.size(), polys.front().field());
    for (std::size_t i = 0; i < polys.size(); ++i) {
        REQUIRE(polys[i].homogeneous_degree() == deg);
        for (const auto& [mon, c] : polys[i].terms()) m.at(i, index.of(mon)) = c;
    }
    return m;
}

std::size_t span_dim(const std::vector<MultiPoly>& polys, const Deg& deg) {
    return rank(coeff_rows(polys, deg));
}

bool index_sets_sorted(const FittingGens& out) {
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> keys;
    for (const auto& g : out.minors) keys.emplace_back(g.row_set, g.col_set);
    return std::is_sorted(keys.begin(), keys.end());
}

}  // namespace

TEST_CASE("sphere maximal minors recover the implicit quadric") {
    auto phi = testutil::sphere();
    auto rep = build_matrix_rep(phi, Deg::single(1));  // 3 x 4

    FittingGens out = fitting_generators(rep, MinorRequest{.fitting_index = 0});
    CHECK(!out.unit_ideal);
    CHECK(out.minor_size == 3);
    CHECK(out.candidate_count == 4);
    CHECK(!out.truncated);
    CHECK(out.minors.size() + out.zero_pruned == 4);
    CHECK(out.minors.size() >= 3);
    CHECK(index_sets_sorted(out));
    for (const auto& g : out.minors) {
        CHECK(g.row_set == std::vector<std::size_t>{0, 1, 2});
        CHECK(g.col_set.size() == 3);
        CHECK(g.value.homogeneous_degree() == Deg::single(3));
    }
    // every maximal minor is a multiple of the quadric, and together they
    // pin it down exactly
    MultiPoly q = parse_poly(RingSpec{RingKind::Target}, phi.field, "X0^2 - X1^2 - X2^2 - X3^2");
    CHECK(multivariate_gcd(values_of(out)) == q);
}

TEST_CASE("sphere one-by-one minors span every linear form") {
    auto phi = testutil::sphere();
    auto rep = build_matrix_rep(phi, Deg::single(1));

    FittingGens out = fitting_generators(rep, MinorRequest{.fitting_index = 2});
    CHECK(out.minor_size == 1);
    CHECK(out.candidate_count == 12);
    CHECK(out.minors.size() + out.zero_pruned == 12);
    CHECK(index_sets_sorted(out));
    for (const auto& g : out.minors) CHECK(g.value.homogeneous_degree() == Deg::single(1));
    CHECK(span_dim(values_of(out), Deg::single(1)) == 4);

    // the intermediate index for completeness: all 2x2 minors, quadratic
    FittingGens mid = fitting_generators(rep, MinorRequest{.fitting_index = 1});
    CHECK(mid.minor_size == 2);
    CHECK(mid.candidate_count == 18);
    CHECK(!mid.minors.empty());
    for (const auto& g : mid.minors) CHECK(g.value.homogeneous_degree() == Deg::single(2));
}

TEST_CASE("unit ideal marker and index guards") {
    auto phi = testutil::sphere();
    auto rep = build_matrix_rep(phi, Deg::single(1));

    FittingGens at_rows = fitting_generators(rep, MinorRequest{.fitting_index = 3});
    CHECK(at_rows.unit_ideal);
    CHECK(at_rows.minors.empty());
    CHECK(at_rows.candidate_count == 0);
    CHECK(fitting_generators(rep, MinorRequest{.fitting_index = 9}).unit_ideal);
    CHECK_THROWS_AS(fitting_generators(rep, MinorRequest{.fitting_index = -1}),
                    std::invalid_argument);

    // the pullback of a unit marker stays a marker
    CHECK(pullback_fitting(phi, rep, MinorRequest{.fitting_index = 3}).unit_ideal);
}

TEST_CASE("no minors exist when the matrix is too narrow") {
    auto phi = testutil::sphere();
    auto rep = build_matrix_rep(phi, Deg::single(0));  // 1 x 0
    FittingGens out = fitting_generators(rep, MinorRequest{.fitting_index = 0});
    CHECK(!out.unit_ideal);
    CHECK(out.minor_size == 1);
    CHECK(out.candidate_count == 0);
    CHECK(out.minors.empty());
}

TEST_CASE("minor vanishing tracks corank at the sphere reference points") {
    auto phi = testutil::sphere();
    auto rep = build_matrix_rep(phi, Deg::single(1));
    const auto& f = phi.field;

    struct Ref {
        std::array<FieldElem, 4> p;
        long corank;
    };
    const std::vector<Ref> refs = {{testutil::pt4(f, 0, 0, 0, 1), 0},
                                   {testutil::pt4(f, 1, 0, 0, 1), 1},
                                   {testutil::pt4(f, 1, 0, 0, -1), 2}};

    for (long i = 0; i <= 2; ++i) {
        FittingGens out = fitting_generators(rep, MinorRequest{.fitting_index = i});
        REQUIRE(!out.truncated);
        REQUIRE(!out.minors.empty());
        for (const auto& ref : refs) {
            bool all_vanish = true;
            for (const auto& g : out.minors)
                if (!g.value.eval(ref.p).is_zero()) all_vanish = false;
            // every minor dies where the corank exceeds the index, and some
            // minor survives where it does not
            CHECK(all_vanish == (ref.corank > i));
        }
    }
}

TEST_CASE("sphere pullbacks collapse and recover the ideal") {
    auto phi = testutil::sphere();
    auto rep = build_matrix_rep(phi, Deg::single(1));

    SECTION("index 0 pulls back to zero") {
        FittingGens pb = pullback_fitting(phi, rep, MinorRequest{.fitting_index = 0});
        CHECK(pb.minors.empty());
        CHECK(pb.zero_pruned == 4);
    }

    SECTION("index rows-1 pulls back onto the coordinate forms") {
        FittingGens pb = pullback_fitting(phi, rep, MinorRequest{.fitting_index = 2});
        REQUIRE(!pb.minors.empty());
        std::vector<MultiPoly> vals = values_of(pb);
        for (const auto& v : vals) CHECK(v.homogeneous_degree() == Deg::single(2));
        // the pullbacks span the same degree-2 space as f0..f3
        std::vector<MultiPoly> both = vals;
        for (const auto& fi : phi.f) both.push_back(fi);
        CHECK(span_dim(vals, Deg::single(2)) == 4);
        CHECK(span_dim(both, Deg::single(2)) == 4);
    }

    SECTION("the middle index survives pullback") {
        FittingGens pb = pullback_fitting(phi, rep, MinorRequest{.fitting_index = 1});
        CHECK(!pb.minors.empty());
        for (const auto& g : pb.minors) CHECK(g.value.homogeneous_degree() == Deg::single(4));
    }
}

TEST_CASE("tensor quadric minors") {
    auto phi = testutil::segre();
    auto rep = build_matrix_rep(phi, Deg::of(0, 1));  // 2 x 2

    FittingGens out = fitting_generators(rep, MinorRequest{.fitting_index = 0});
    REQUIRE(out.minors.size() == 1);
    CHECK(out.candidate_count == 1);
    MultiPoly q = parse_poly(RingSpec{RingKind::Target}, phi.field, "X0*X3 - X1*X2");
    CHECK(multivariate_gcd(values_of(out)) == q);

    FittingGens entries = fitting_generators(rep, MinorRequest{.fitting_index = 1});
    CHECK(entries.candidate_count == 4);
    CHECK(span_dim(values_of(entries), Deg::single(1)) == 4);

    CHECK(pullback_fitting(phi, rep, MinorRequest{.fitting_index = 0}).minors.empty());
    FittingGens pb = pullback_fitting(phi, rep, MinorRequest{.fitting_index = 1});
    REQUIRE(!pb.minors.empty());
    for (const auto& g : pb.minors) CHECK(g.value.homogeneous_degree() == Deg::of(1, 1));
}

TEST_CASE("sampling is seeded, capped, and sorted") {
    auto phi = testutil::sphere();
    auto rep = build_matrix_rep(phi, Deg::single(2));  // 6 x 11

    MinorRequest req{.fitting_index = 2, .limit = 12, .seed = kDefaultSeed};
    FittingGens a = fitting_generators(rep, req);
    CHECK(a.truncated);
    CHECK(a.candidate_count == 4950);  // C(6,4) * C(11,4)
    CHECK(a.minors.size() + a.zero_pruned == 12);
    CHECK(index_sets_sorted(a));
    for (const auto& g : a.minors) CHECK(g.value.homogeneous_degree() == Deg::single(4));

    FittingGens b = fitting_generators(rep, req);
    REQUIRE(a.minors.size() == b.minors.size());
    for (std::size_t i = 0; i < a.minors.size(); ++i) {
        CHECK(a.minors[i].row_set == b.minors[i].row_set);
        CHECK(a.minors[i].col_set == b.minors[i].col_set);
        CHECK(a.minors[i].value == b.minors[i].value);
    }

    // a limit that does not bind leaves the enumeration complete
    FittingGens full = fitting_generators(rep, MinorRequest{.fitting_index = 4, .limit = 900});
    CHECK(!full.truncated);
    CHECK(full.candidate_count == 825);  // C(6,2) * C(11,2)
    CHECK(index_sets_sorted(full));
}

TEST_CASE("oversized enumerations and minors are refused") {
    auto phi = testutil::sphere();
    auto rep = build_matrix_rep(phi, Deg::single(3));  // 10 rows
    REQUIRE(rep.rows() == 10);

    CHECK_THROWS_MATCHES(fitting_generators(rep, MinorRequest{.fitting_index = 1}), MathError,
                         MessageMatches(ContainsSubstring("exceed the configured bound")));
    CHECK_THROWS_MATCHES(fitting_generators(rep, MinorRequest{.fitting_index = 4}), MathError,
                         MessageMatches(ContainsSubstring("without a limit")));

    // both guards are adjustable: one sampled 7x7 minor on request
    MinorRequest wide{.fitting_index = 3, .limit = 1, .max_minor_size = 7};
    FittingGens one = fitting_generators(rep, wide);
    CHECK(one.truncated);
    CHECK(one.minors.size() + one.zero_pruned == 1);
    for (const auto& g : one.minors) CHECK(g.value.homogeneous_degree() == Deg::single(7));
}
