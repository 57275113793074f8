#pragma once

/*
 * A rational surface parameterization: four forms f0..f3 of one common
 * degree, from either k[s0,s1,s2] (map from P^2) or the bigraded
 * k[s0,s1;t0,t1] (map from P^1 x P^1), landing in P^3.
 */

#include "fibratrix/gcd.hpp"
#include "fibratrix/matrix.hpp"
#include "fibratrix/parse.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace fibratrix {

struct Parameterization {
    RingSpec ring;
    Field field;
    std::array<MultiPoly, 4> f;
    std::optional<Deg> degree;  // common degree, when the forms agree on one

    const Deg& d() const {
        if (!degree)
            throw MathError("parameterization forms do not share a degree");
        return *degree;
    }
};

inline Parameterization make_parameterization(const RingSpec& ring, const Field& field,
                                              std::array<MultiPoly, 4> f) {
    Parameterization p{ring, field, std::move(f), std::nullopt};
    std::optional<Deg> common;
    bool ok = true;
    for (const auto& g : p.f) {
        if (!(g.ring() == ring) || !(g.field() == field))
            throw std::invalid_argument("parameterization forms disagree on ring/field");
        auto hd = g.homogeneous_degree();
        if (!hd) { ok = false; break; }          // zero or inhomogeneous form
        if (!common) common = *hd;
        else if (!(*common == *hd)) { ok = false; break; }
    }
    if (ok && common) {
        bool positive = common->pair ? (common->a >= 1 && common->b >= 1)
                                     : common->a >= 1;
        if (positive) p.degree = common;
    }
    return p;
}

inline Parameterization parse_parameterization(const RingSpec& ring, const Field& field,
                                               const std::array<std::string, 4>& text) {
    std::array<MultiPoly, 4> f = {
        parse_poly(ring, field, text[0]), parse_poly(ring, field, text[1]),
        parse_poly(ring, field, text[2]), parse_poly(ring, field, text[3])};
    return make_parameterization(ring, field, std::move(f));
}

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

// The cheap input contracts: a shared positive degree, four independent
// forms, and a finite base locus (constant gcd). The probabilistic
// birationality probe lives with the fiber machinery.
inline std::vector<CheckResult> structural_checks(const Parameterization& phi) {
    std::vector<CheckResult> out;
    bool degree_ok = phi.degree.has_value();
    out.push_back({"common_degree", degree_ok,
                   degree_ok ? "forms are homogeneous of degree " + phi.d().str()
                             : "forms are zero, inhomogeneous, or of mixed degree"});
    if (!degree_ok) return out;

    auto basis = monomial_basis(phi.ring, phi.d());
    ExactMatrix m(4, basis.size(), phi.field);
    for (int i = 0; i < 4; ++i) {
        GradedPoly g = to_graded(phi.f[i], phi.d());
        for (std::size_t c = 0; c < basis.size(); ++c) m.at(i, c) = g.coeff[c];
    }
    std::size_t rk = rank(m);
    out.push_back({"independent_forms", rk == 4,
                   "coordinate forms span a space of dimension " + std::to_string(rk)});

    MultiPoly g = multivariate_gcd({phi.f[0], phi.f[1], phi.f[2], phi.f[3]});
    out.push_back({"finite_base_locus", g.is_constant(),
                   g.is_constant() ? "gcd of the forms is constant"
                                   : "forms share the factor " + g.str()});
    return out;
}

inline bool checks_passed(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

}  // namespace fibratrix
