#pragma once

/*
 * Fitting ideals of a matrix representation.
 *
 * For M(X) = X0*A0 + X1*A1 + X2*A2 + X3*A3 with rows() rows, the i-th
 * Fitting ideal is generated by the determinants of all square submatrices
 * of size rows() - i. Entries are linear forms, so each such minor is a
 * homogeneous polynomial of degree rows() - i in X0..X3. Pulling a minor
 * back along the parameterization substitutes f_j for X_j.
 *
 * These expansions are for ideal-level inspection at desk scale; nothing
 * in the fiber-classification path depends on them. Minor counts grow as
 * C(rows, size) * C(cols, size), so callers either take the full list when
 * it is small or a seeded sample capped by an explicit limit.
 */

#include "fibratrix/matrix_rep.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fibratrix {

struct MinorRequest {
    long fitting_index = 0;
    // Maximum number of minors to draw; 0 leaves the enumeration uncapped,
    // which is refused outright once the candidate count gets large.
    std::size_t limit = 0;
    std::uint64_t seed = kDefaultSeed;
    // Symbolic determinants beyond this size are rejected.
    std::size_t max_minor_size = 6;
};

struct Minor {
    std::vector<std::size_t> row_set;  // strictly increasing indices into the rep
    std::vector<std::size_t> col_set;
    MultiPoly value;
};

struct FittingGens {
    // fitting_index >= rows: the empty-minor convention makes Fitt the unit
    // ideal, and no generator list is emitted.
    bool unit_ideal = false;
    std::size_t minor_size = 0;
    unsigned long long candidate_count = 0;  // C(rows, size) * C(cols, size)
    bool truncated = false;                  // a seeded sample, not the full list
    std::size_t zero_pruned = 0;
    std::vector<Minor> minors;               // sorted by (row_set, col_set)
};

namespace detail {

// Uncapped enumerations stop making sense long before the count overflows,
// so refuse anything past this many candidate minors.
inline constexpr unsigned long long kMinorEnumerationCap = 100000;

inline unsigned long long mul_sat(unsigned long long a, unsigned long long b) {
    constexpr auto kMax = std::numeric_limits<unsigned long long>::max();
    if (a != 0 && b > kMax / a) return kMax;
    return a * b;
}

inline unsigned long long choose_sat(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    if (n - k < k) k = n - k;
    unsigned long long r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        // r * (n-k+i) is C(n-k+i, i) * i, so the division below is exact.
        r = mul_sat(r, n - k + i);
        if (r == std::numeric_limits<unsigned long long>::max()) return r;
        r /= i;
    }
    return r;
}

// Next k-subset of {0..n-1} in lexicographic order; false once exhausted.
inline bool advance_combo(std::vector<std::size_t>& ix, std::size_t n) {
    const std::size_t k = ix.size();
    for (std::size_t i = k; i-- > 0;) {
        if (ix[i] + (k - i) < n) {
            ++ix[i];
            for (std::size_t j = i + 1; j < k; ++j) ix[j] = ix[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Floyd's sampling: k distinct members of {0..n-1}, returned sorted.
inline std::vector<std::size_t> sample_combo(std::mt19937_64& rng, std::size_t n, std::size_t k) {
    std::set<std::size_t> chosen;
    for (std::size_t j = n - k; j < n; ++j) {
        const std::size_t t = static_cast<std::size_t>(rng() % (j + 1));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    return std::vector<std::size_t>(chosen.begin(), chosen.end());
}

// Determinant of the (row_set x col_set) submatrix, expanded over the
// symbolic entries. Laplace along the top row of each tail block, with one
// memo slot per subset of still-unused columns.
inline MultiPoly minor_det(const MatrixRep& rep, const std::vector<std::size_t>& rs,
                           const std::vector<std::size_t>& cs) {
    const std::size_t k = rs.size();
    const RingSpec tgt{RingKind::Target};
    std::vector<MultiPoly> entry;
    entry.reserve(k * k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) entry.push_back(rep.entry_form(rs[r], cs[c]));

    // d[mask] = det of the last popcount(mask) rows against the columns in
    // mask; every mask ^ bit is numerically smaller, so one ascending pass.
    const std::size_t full = (std::size_t{1} << k) - 1;
    std::vector<MultiPoly> d(full + 1, MultiPoly::zero(tgt, rep.field));
    d[0] = MultiPoly::constant(tgt, rep.field, FieldElem::one(rep.field));
    for (std::size_t mask = 1; mask <= full; ++mask) {
        const std::size_t r = k - static_cast<std::size_t>(std::popcount(mask));
        MultiPoly acc = MultiPoly::zero(tgt, rep.field);
        int pos = 0;
        for (std::size_t c = 0; c < k; ++c) {
            if (!(mask >> c & 1)) continue;
            const MultiPoly& e = entry[r * k + c];
            if (!e.is_zero()) {
                MultiPoly term = e * d[mask ^ (std::size_t{1} << c)];
                acc = (pos % 2 == 0) ? acc + term : acc - term;
            }
            ++pos;
        }
        d[mask] = std::move(acc);
    }
    return d[full];
}

}  // namespace detail

inline FittingGens fitting_generators(const MatrixRep& rep, const MinorRequest& req = {}) {
    if (req.fitting_index < 0) throw std::invalid_argument("fitting index must be nonnegative");
    FittingGens out;
    const std::size_t rows = rep.rows();
    const std::size_t cols = rep.cols();
    if (static_cast<unsigned long long>(req.fitting_index) >= rows) {
        out.unit_ideal = true;
        return out;
    }
    const std::size_t size = rows - static_cast<std::size_t>(req.fitting_index);
    out.minor_size = size;
    if (size > req.max_minor_size)
        throw MathError("symbolic minors of size " + std::to_string(size) +
                        " exceed the configured bound of " + std::to_string(req.max_minor_size));
    out.candidate_count = detail::mul_sat(detail::choose_sat(rows, size), detail::choose_sat(cols, size));
    if (out.candidate_count == 0) return out;  // size > cols: the ideal is zero
    const bool sampled = req.limit != 0 && out.candidate_count > req.limit;
    if (req.limit == 0 && out.candidate_count > detail::kMinorEnumerationCap)
        throw MathError(std::to_string(out.candidate_count) +
                        " candidate minors is too many to enumerate without a limit");

    using Pick = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;
    std::vector<Pick> picks;
    if (!sampled) {
        std::vector<std::size_t> rset(size), cset(size);
        for (std::size_t i = 0; i < size; ++i) rset[i] = i;
        do {
            for (std::size_t i = 0; i < size; ++i) cset[i] = i;
            do picks.emplace_back(rset, cset);
            while (detail::advance_combo(cset, cols));
        } while (detail::advance_combo(rset, rows));
    } else {
        out.truncated = true;
        std::mt19937_64 rng(req.seed);
        std::set<Pick> seen;
        // candidate_count > limit, so distinct draws exist; the guard only
        // bounds the tail of collision retries.
        std::size_t attempts = 0;
        const std::size_t max_attempts = 64 * req.limit + 256;
        while (seen.size() < req.limit && attempts < max_attempts) {
            seen.insert({detail::sample_combo(rng, rows, size), detail::sample_combo(rng, cols, size)});
            ++attempts;
        }
        picks.assign(seen.begin(), seen.end());
    }

    for (auto& [rset, cset] : picks) {
        MultiPoly v = detail::minor_det(rep, rset, cset);
        if (v.is_zero()) {
            ++out.zero_pruned;
            continue;
        }
        out.minors.push_back(Minor{std::move(rset), std::move(cset), std::move(v)});
    }
    return out;
}

// The same minors with f_j substituted for X_j; results live in the source
// ring. Minors that die under substitution are pruned like zero minors.
inline FittingGens pullback_fitting(const Parameterization& phi, const MatrixRep& rep,
                                    const MinorRequest& req = {}) {
    if (!(phi.ring == rep.ring) || !(phi.field == rep.field))
        throw std::invalid_argument("parameterization and representation disagree on ring or field");
    FittingGens out = fitting_generators(rep, req);
    if (out.unit_ideal) return out;
    std::vector<Minor> kept;
    kept.reserve(out.minors.size());
    for (auto& g : out.minors) {
        MultiPoly v = substitute_forms(g.value, phi.f);
        if (v.is_zero()) {
            ++out.zero_pruned;
            continue;
        }
        kept.push_back(Minor{std::move(g.row_set), std::move(g.col_set), std::move(v)});
    }
    out.minors = std::move(kept);
    return out;
}

}  // namespace fibratrix
