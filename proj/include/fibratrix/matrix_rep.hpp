#pragma once

/*
 * Matrix representations of a parameterization.
 *
 * Fix an index nu. A syzygy of index nu is a tuple (g0,g1,g2,g3) of forms
 * of degree nu with g0*f0 + g1*f1 + g2*f2 + g3*f3 = 0. These form the
 * kernel of the linear map taking the stacked coefficients of the gi to
 * the coefficients of sum gi*fi in degree nu + d.
 *
 * Writing the j-th block of the k-th kernel column against the monomial
 * basis of degree nu gives a matrix of linear forms in X0..X3:
 *
 *   M(X) = X0*A0 + X1*A1 + X2*A2 + X3*A3,
 *
 * with one row per degree-nu monomial and one column per syzygy. The rank
 * of M at a point of P^3 drops exactly on the image surface, and the
 * corank measures the fiber there.
 */

#include "fibratrix/matrix.hpp"
#include "fibratrix/parameterization.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace fibratrix {

struct SyzygyBasis {
    RingSpec ring;
    Deg nu;
    std::vector<Monomial> mon_basis;  // basis of the degree-nu piece
    // 4*b x n, b = mon_basis.size(); rows j*b..j*b+b-1 hold the
    // coefficients of g_j, columns in reduced column echelon form.
    ExactMatrix stacked;

    std::size_t count() const { return stacked.cols(); }

    std::array<GradedPoly, 4> tuple(std::size_t k) const {
        const std::size_t b = mon_basis.size();
        const Field& fld = stacked.field();
        GradedPoly proto{ring, fld, nu, std::vector<FieldElem>(b, FieldElem::zero(fld))};
        std::array<GradedPoly, 4> g{proto, proto, proto, proto};
        for (int j = 0; j < 4; ++j)
            for (std::size_t r = 0; r < b; ++r) g[j].coeff[r] = stacked.at(j * b + r, k);
        return g;
    }
};

// Coefficient matrix of (g0..g3) -> sum gi*fi as a map from four copies of
// the degree-nu piece into the degree nu+d piece. Column j*b + m holds the
// coefficients of basis[m] * f_j.
inline ExactMatrix syzygy_map_matrix(const Parameterization& phi, const Deg& nu) {
    const Deg target = nu + phi.d();
    const auto src = monomial_basis(phi.ring, nu);
    const auto dst = monomial_basis(phi.ring, target);
    MonoIndex index(dst);
    const std::size_t b = src.size();
    ExactMatrix m(dst.size(), 4 * b, phi.field);
    const FieldElem one = FieldElem::one(phi.field);
    for (int j = 0; j < 4; ++j)
        for (std::size_t c = 0; c < b; ++c) {
            MultiPoly prod = phi.f[j].times_monomial(src[c], one);
            for (const auto& [mon, coef] : prod.terms()) m.at(index.of(mon), j * b + c) = coef;
        }
    return m;
}

inline SyzygyBasis syzygy_graded_basis(const Parameterization& phi, const Deg& nu) {
    auto src = monomial_basis(phi.ring, nu);
    ExactMatrix kernel = right_kernel(syzygy_map_matrix(phi, nu));
    return SyzygyBasis{phi.ring, nu, std::move(src), std::move(kernel)};
}

struct MatrixRep {
    RingSpec ring;   // source ring of the parameterization
    Field field;
    Deg nu;
    Deg d;
    std::vector<Monomial> row_basis;   // degree-nu monomials, one per row
    std::array<ExactMatrix, 4> coeff;  // A0..A3, each rows() x cols()

    std::size_t rows() const { return coeff[0].rows(); }
    std::size_t cols() const { return coeff[0].cols(); }

    // The (r,c) entry as a linear form in the target coordinates.
    MultiPoly entry_form(std::size_t r, std::size_t c) const {
        RingSpec target{RingKind::Target};
        MultiPoly e = MultiPoly::zero(target, field);
        for (int j = 0; j < 4; ++j)
            e = e + MultiPoly::variable(target, field, j).scaled(coeff[j].at(r, c));
        return e;
    }
};

inline MatrixRep build_matrix_rep(const Parameterization& phi, const Deg& nu) {
    SyzygyBasis syz = syzygy_graded_basis(phi, nu);
    const std::size_t b = syz.mon_basis.size();
    const std::size_t n = syz.count();
    std::array<ExactMatrix, 4> coeff{
        ExactMatrix(b, n, phi.field), ExactMatrix(b, n, phi.field),
        ExactMatrix(b, n, phi.field), ExactMatrix(b, n, phi.field)};
    for (int j = 0; j < 4; ++j)
        for (std::size_t r = 0; r < b; ++r)
            for (std::size_t c = 0; c < n; ++c) coeff[j].at(r, c) = syz.stacked.at(j * b + r, c);
    return MatrixRep{phi.ring, phi.field, nu, phi.d(), std::move(syz.mon_basis), std::move(coeff)};
}

inline ExactMatrix evaluate_rep(const MatrixRep& rep, std::span<const FieldElem, 4> point) {
    ExactMatrix m(rep.rows(), rep.cols(), rep.field);
    for (int j = 0; j < 4; ++j) {
        if (point[j].is_zero()) continue;
        m = m + rep.coeff[j].scaled(point[j]);
    }
    return m;
}

}  // namespace fibratrix
