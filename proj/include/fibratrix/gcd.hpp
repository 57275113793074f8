#pragma once

/*
 * Exact multivariate gcd, content/primitive-part style (Knuth 4.6.1):
 * view the polynomial as univariate in the last variable over the ring in
 * the remaining ones, pull out contents, run the primitive Euclidean
 * algorithm with pseudo-remainders, and recurse for the contents until the
 * problem is univariate over the field. Results are normalized monic with
 * respect to the graded-lex leading term.
 */

#include "fibratrix/poly.hpp"

#include <optional>
#include <vector>

namespace fibratrix {

// Quotient p/d when the division is exact, nullopt otherwise.
inline std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& d) {
    if (d.is_zero()) throw MathError("division by the zero polynomial");
    MultiPoly q(p.ring(), p.field()), r = p;
    auto [dm, dc] = d.leading();
    while (!r.is_zero()) {
        auto [rm, rc] = r.leading();
        if (!dm.divides(rm)) return std::nullopt;
        Monomial t = dm.quotient_into(rm);
        FieldElem c = rc / dc;
        q.add_term(t, c);
        r = r - d.times_monomial(t, c);
    }
    return q;
}

// leading coefficient made 1 (graded-lex leading term)
inline MultiPoly normalize_monic(const MultiPoly& p) {
    if (p.is_zero()) return p;
    return p.scaled(p.leading().second.inv());
}

namespace detail {

inline long deg_in(const MultiPoly& p, int v) {
    long d = 0;
    for (const auto& [m, c] : p.terms()) d = std::max<long>(d, m.e[v]);
    return d;
}

// coefficient of var^k, as a polynomial with the var-v exponent removed
inline MultiPoly coeff_of(const MultiPoly& p, int v, long k) {
    MultiPoly c(p.ring(), p.field());
    for (const auto& [m, cf] : p.terms()) {
        if (m.e[v] != k) continue;
        Monomial m2 = m;
        m2.e[v] = 0;
        c.add_term(m2, cf);
    }
    return c;
}

inline MultiPoly times_var_power(const MultiPoly& p, int v, long k) {
    Monomial m;
    m.e[v] = static_cast<std::uint16_t>(k);
    return p.times_monomial(m, FieldElem::one(p.field()));
}

MultiPoly gcd_rec(const MultiPoly& a, const MultiPoly& b, int v);

inline MultiPoly gcd_list_rec(const std::vector<MultiPoly>& polys, int v) {
    MultiPoly g = polys.front();
    for (std::size_t i = 1; i < polys.size(); ++i) {
        if (g.is_constant() && !g.is_zero()) break;  // already a unit
        g = gcd_rec(g, polys[i], v);
    }
    return g;
}

inline MultiPoly content_in(const MultiPoly& p, int v) {
    std::vector<MultiPoly> coeffs;
    for (long k = 0; k <= deg_in(p, v); ++k) {
        MultiPoly c = coeff_of(p, v, k);
        if (!c.is_zero()) coeffs.push_back(c);
    }
    return gcd_list_rec(coeffs, v - 1);
}

// pseudo-remainder of a by b with respect to var v; deg_v(a) >= deg_v(b)
inline MultiPoly prem(MultiPoly r, const MultiPoly& b, int v) {
    long db = deg_in(b, v);
    MultiPoly lcb = coeff_of(b, v, db);
    while (!r.is_zero() && deg_in(r, v) >= db) {
        long dr = deg_in(r, v);
        MultiPoly lcr = coeff_of(r, v, dr);
        r = r * lcb - times_var_power(lcr * b, v, dr - db);
    }
    return r;
}

inline MultiPoly gcd_rec(const MultiPoly& a, const MultiPoly& b, int v) {
    if (v == 0) {
        // univariate over the field
        MultiPoly x = a, y = b;
        while (!y.is_zero()) {
            long dy = deg_in(y, 0);
            MultiPoly ylc = coeff_of(y, 0, dy);  // a constant here
            MultiPoly r = x;
            while (!r.is_zero() && deg_in(r, 0) >= dy) {
                long dr = deg_in(r, 0);
                FieldElem c = coeff_of(r, 0, dr).leading().second /
                              ylc.leading().second;
                r = r - times_var_power(y, 0, dr - dy).scaled(c);
            }
            x = y;
            y = r;
        }
        return normalize_monic(x);
    }

    if (deg_in(a, v) == 0 && deg_in(b, v) == 0) return gcd_rec(a, b, v - 1);

    MultiPoly ca = content_in(a, v), cb = content_in(b, v);
    MultiPoly g0 = gcd_rec(ca, cb, v - 1);
    MultiPoly x = *divide_exact(a, ca), y = *divide_exact(b, cb);
    if (deg_in(x, v) < deg_in(y, v)) std::swap(x, y);
    while (!y.is_zero()) {
        MultiPoly r = prem(x, y, v);
        x = y;
        if (r.is_zero()) { y = r; continue; }
        y = *divide_exact(r, content_in(r, v));
    }
    return normalize_monic(g0 * x);
}

}  // namespace detail

// gcd of all nonzero entries; at least one input must be nonzero
inline MultiPoly multivariate_gcd(const std::vector<MultiPoly>& polys) {
    std::vector<MultiPoly> nz;
    for (const auto& p : polys)
        if (!p.is_zero()) nz.push_back(p);
    if (nz.empty()) throw MathError("gcd of an all-zero input");

    bool all_homogeneous = true;
    for (const auto& p : nz)
        if (!p.homogeneous_degree()) all_homogeneous = false;

    MultiPoly g = normalize_monic(nz.front());
    for (std::size_t i = 1; i < nz.size(); ++i) {
        if (g.is_constant()) break;
        g = detail::gcd_rec(g, nz[i], g.ring().nvars() - 1);
    }
    g = normalize_monic(g);

    if (all_homogeneous && !g.homogeneous_degree())
        throw std::logic_error("gcd of homogeneous inputs came out inhomogeneous");
    return g;
}

}  // namespace fibratrix
