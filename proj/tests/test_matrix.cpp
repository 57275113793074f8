#include "fibratrix/matrix.hpp"
#include "naive_linalg.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace fibratrix;

namespace {

ExactMatrix from_ints(const std::vector<std::vector<long long>>& rows, const Field& f) {
    ExactMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size(), f);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m.at(r, c) = FieldElem::of(f, rows[r][c]);
    return m;
}

// canonical reduced column echelon shape (the kernel output contract)
void require_canonical_columns(const ExactMatrix& k) {
    std::size_t prev_pivot = 0;
    bool first = true;
    for (std::size_t j = 0; j < k.cols(); ++j) {
        std::size_t r = 0;
        while (r < k.rows() && k.at(r, j).is_zero()) ++r;
        REQUIRE(r < k.rows());
        REQUIRE(k.at(r, j).is_one());
        if (!first) REQUIRE(r > prev_pivot);
        prev_pivot = r;
        first = false;
        for (std::size_t j2 = 0; j2 < k.cols(); ++j2)
            if (j2 != j) REQUIRE(k.at(r, j2).is_zero());
    }
}

}  // namespace

TEST_CASE("rank of identity and zero matrices") {
    Field q = field_q();
    REQUIRE(rank(ExactMatrix::identity(3, q)) == 3);
    REQUIRE(rank(ExactMatrix(3, 4, q)) == 0);
    REQUIRE(rank(ExactMatrix()) == 0);
}

TEST_CASE("fraction-free rank agrees with naive rational elimination") {
    Field q = field_q();
    std::mt19937_64 rng(7151);
    std::uniform_int_distribution<int> dim(1, 12), entry(-99, 99);
    for (int trial = 0; trial < 120; ++trial) {
        std::size_t rows = dim(rng), cols = dim(rng);
        std::vector<std::vector<Rat>> raw(rows, std::vector<Rat>(cols));
        ExactMatrix m(rows, cols, q);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) {
                int v = entry(rng);
                raw[r][c] = v;
                m.at(r, c) = FieldElem::of(q, v);
            }
        // some trials get a forced dependency so low ranks are exercised too
        if (trial % 3 == 0 && rows >= 2) {
            for (std::size_t c = 0; c < cols; ++c) {
                raw[rows - 1][c] = raw[0][c] * 2;
                m.at(rows - 1, c) = m.at(0, c) + m.at(0, c);
            }
        }
        REQUIRE(rank(m) == testutil::naive_rank(raw));
        REQUIRE(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("rank handles rational entries") {
    Field q = field_q();
    ExactMatrix m(2, 2, q);
    m.at(0, 0) = parse_scalar(q, "1/2");
    m.at(0, 1) = parse_scalar(q, "1/3");
    m.at(1, 0) = parse_scalar(q, "3/2");
    m.at(1, 1) = parse_scalar(q, "1");  // second row = 3 * first row
    REQUIRE(rank(m) == 1);
    m.at(1, 1) = parse_scalar(q, "2");
    REQUIRE(rank(m) == 2);
}

TEST_CASE("rank over F_p matches rational rank of random integer matrices") {
    Field q = field_q();
    Field fp = field_fp(2147483647);  // 2^31 - 1, comfortably above 2^20
    std::mt19937_64 rng(40923);
    std::uniform_int_distribution<int> dim(1, 10), entry(-50, 50);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t rows = dim(rng), cols = dim(rng);
        ExactMatrix mq(rows, cols, q), mp(rows, cols, fp);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) {
                int v = entry(rng);
                mq.at(r, c) = FieldElem::of(q, v);
                mp.at(r, c) = FieldElem::of(fp, v);
            }
        REQUIRE(rank(mq) == rank(mp));
    }
}

TEST_CASE("right kernel of the identity is empty") {
    ExactMatrix k = right_kernel(ExactMatrix::identity(2, field_q()));
    REQUIRE(k.rows() == 2);
    REQUIRE(k.cols() == 0);
}

TEST_CASE("right kernel of (1 -1)") {
    Field q = field_q();
    ExactMatrix m = from_ints({{1, -1}}, q);
    ExactMatrix k = right_kernel(m);
    REQUIRE(k.rows() == 2);
    REQUIRE(k.cols() == 1);
    REQUIRE(k.at(0, 0).is_one());
    REQUIRE(k.at(1, 0).is_one());
}

TEST_CASE("kernel identities and canonical form on random matrices") {
    Field q = field_q();
    std::mt19937_64 rng(655321);
    std::uniform_int_distribution<int> dim(1, 9), entry(-9, 9);
    for (int trial = 0; trial < 80; ++trial) {
        std::size_t rows = dim(rng), cols = dim(rng);
        ExactMatrix m(rows, cols, q);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                m.at(r, c) = FieldElem::of(q, entry(rng));

        std::size_t rk = rank(m);
        ExactMatrix kr = right_kernel(m);
        REQUIRE(kr.cols() == m.cols() - rk);
        REQUIRE((m * kr).is_zero());
        require_canonical_columns(kr);

        ExactMatrix kl = left_kernel(m);
        REQUIRE(kl.cols() == m.rows() - rk);
        REQUIRE((kl.transpose() * m).is_zero());
        require_canonical_columns(kl);
    }
}

TEST_CASE("kernel over F_p satisfies the same contracts") {
    Field fp = field_fp(10007);
    std::mt19937_64 rng(90125);
    std::uniform_int_distribution<int> dim(1, 8), entry(-20, 20);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = dim(rng), cols = dim(rng);
        ExactMatrix m(rows, cols, fp);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                m.at(r, c) = FieldElem::of(fp, entry(rng));
        ExactMatrix k = right_kernel(m);
        REQUIRE(k.cols() == m.cols() - rank(m));
        REQUIRE((m * k).is_zero());
        require_canonical_columns(k);
    }
}

TEST_CASE("field element basics") {
    Field q = field_q();
    FieldElem a = parse_scalar(q, "-4/6");
    REQUIRE(a.str() == "-2/3");
    REQUIRE((a * FieldElem::of(q, -3)).str() == "2");
    REQUIRE_THROWS_AS(a / FieldElem::zero(q), MathError);

    Field fp = field_fp(7);
    FieldElem b = parse_scalar(fp, "10");
    REQUIRE(b.str() == "3");
    REQUIRE((b.inv() * b).is_one());
    REQUIRE(parse_scalar(fp, "1/2").str() == "4");  // 2 * 4 = 8 = 1 mod 7
    REQUIRE_THROWS_AS(parse_scalar(fp, "1/7"), MathError);
    REQUIRE_THROWS_AS(a + b, std::invalid_argument);
    REQUIRE_THROWS_AS(parse_scalar(q, "abc"), std::invalid_argument);
    REQUIRE_THROWS_AS(field_fp(10), std::invalid_argument);
}
