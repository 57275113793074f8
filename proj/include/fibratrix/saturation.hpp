#pragma once

/*
 * Saturation of the coordinate ideal I = (f0..f3) with respect to the
 * irrelevant maximal ideal, one graded piece at a time, plus the derived
 * threshold index nu0 = 2d - 2 - indeg(I^sat).
 *
 * A form F of degree mu lies in the saturated piece iff m*F lands in I for
 * every monomial m of degree N = max(0, 3d-2-mu); past degree 3d-2 the
 * ideal and its saturation agree, so checking in degree D = max(mu, 3d-2)
 * suffices. Membership in I_D is one linear condition per left kernel
 * vector of the spanning matrix of I_D, which makes the piece itself the
 * kernel of a stacked constraint matrix.
 */

#include "fibratrix/matrix_rep.hpp"

#include <algorithm>
#include <vector>

namespace fibratrix {

struct SatInfo {
    long indeg_sat = 0;          // least degree with a nonzero saturated piece
    long nu0 = 0;                // 2d - 2 - indeg_sat (may be negative for d = 1)
    long base_locus_degree = 0;  // dim S_{3d-2} - dim I_{3d-2}
    bool empty_base_locus = false;
};

namespace detail {

inline void require_triangular(const Parameterization& phi, const char* what) {
    if (phi.ring.kind != RingKind::Triangular)
        throw std::invalid_argument(std::string(what) + " is defined for triangular input");
}

// Shared core: the degree-mu saturated piece, given the left kernel L of
// the spanning matrix of I_D and the index of the degree-D basis.
inline ExactMatrix sat_piece_kernel(const Parameterization& phi, long mu, long D,
                                    const ExactMatrix& L, const MonoIndex& dst) {
    const auto bmu = monomial_basis(phi.ring, Deg::single(mu));
    const auto bn = monomial_basis(phi.ring, Deg::single(D - mu));
    ExactMatrix cons(bn.size() * L.cols(), bmu.size(), phi.field);
    for (std::size_t t = 0; t < bn.size(); ++t)
        for (std::size_t k = 0; k < bmu.size(); ++k) {
            std::size_t row = dst.of(bn[t].times(bmu[k]));
            for (std::size_t r = 0; r < L.cols(); ++r)
                cons.at(t * L.cols() + r, k) = L.at(row, r);
        }
    return right_kernel(cons);
}

}  // namespace detail

// Basis of the degree-mu piece of the saturation, as graded polynomials.
inline std::vector<GradedPoly> saturation_piece(const Parameterization& phi, long mu) {
    detail::require_triangular(phi, "saturation");
    const long d = phi.d().a;
    const long D = std::max(mu, 3 * d - 2);
    const auto dst_basis = monomial_basis(phi.ring, Deg::single(D));
    MonoIndex dst(dst_basis);
    ExactMatrix L = left_kernel(syzygy_map_matrix(phi, Deg::single(D - d)));
    ExactMatrix K = detail::sat_piece_kernel(phi, mu, D, L, dst);

    std::vector<GradedPoly> out;
    const std::size_t b = K.rows();
    for (std::size_t c = 0; c < K.cols(); ++c) {
        GradedPoly g{phi.ring, phi.field, Deg::single(mu),
                     std::vector<FieldElem>(b, FieldElem::zero(phi.field))};
        for (std::size_t r = 0; r < b; ++r) g.coeff[r] = K.at(r, c);
        out.push_back(std::move(g));
    }
    return out;
}

// Threshold data for the representation indices. Fails when the input
// cannot define a surface: a common factor (positive-dimensional base
// locus) or only two independent forms (the image is a curve).
inline SatInfo compute_nu0(const Parameterization& phi) {
    detail::require_triangular(phi, "the threshold index");
    const long d = phi.d().a;

    MultiPoly g = multivariate_gcd({phi.f[0], phi.f[1], phi.f[2], phi.f[3]});
    if (!g.is_constant())
        throw MathError("coordinate forms share the factor " + g.str() +
                        "; the base locus has positive dimension");

    const long D = 3 * d - 2;
    const auto dst_basis = monomial_basis(phi.ring, Deg::single(D));
    MonoIndex dst(dst_basis);
    ExactMatrix W = syzygy_map_matrix(phi, Deg::single(D - d));
    const std::size_t rkW = rank(W);

    // With a finite base locus, a two-dimensional span of forms means the
    // map factors through P^1 and the closed image is a curve.
    {
        ExactMatrix F(4, dim_piece(phi.ring, phi.d()), phi.field);
        for (int i = 0; i < 4; ++i) {
            GradedPoly gp = to_graded(phi.f[i], phi.d());
            for (std::size_t c = 0; c < gp.coeff.size(); ++c) F.at(i, c) = gp.coeff[c];
        }
        if (rank(F) == 2)
            throw MathError("only two independent coordinate forms; "
                            "the closed image is a curve, not a surface");
    }

    ExactMatrix L = left_kernel(W);
    SatInfo info;
    info.base_locus_degree = static_cast<long>(dst_basis.size() - rkW);
    info.indeg_sat = -1;
    for (long mu = 0; mu <= d; ++mu) {
        if (detail::sat_piece_kernel(phi, mu, D, L, dst).cols() > 0) {
            info.indeg_sat = mu;
            break;
        }
    }
    if (info.indeg_sat < 0)  // f0 itself lies in the saturation in degree d
        throw std::logic_error("saturated ideal vanished through degree d");
    info.nu0 = 2 * d - 2 - info.indeg_sat;
    info.empty_base_locus = info.indeg_sat == 0;
    return info;
}

// Index constraints for tensor input: bidegrees inside the excluded region
// give matrices whose corank cannot be read fiberwise.
inline bool region_admissible(const Deg& d, const Deg& nu) {
    if (!d.pair || !nu.pair)
        throw std::invalid_argument("region test needs bidegrees");
    const bool excluded = nu.a <= d.a - 2 || nu.b <= d.b - 2 ||
                          (nu.a <= 2 * d.a - 2 && nu.b <= 2 * d.b - 2);
    return !excluded;
}

// The representation index used when the caller does not pick one.
inline Deg default_rep_index(const Parameterization& phi, const SatInfo* sat) {
    if (phi.ring.kind == RingKind::Tensor) {
        const Deg& d = phi.d();
        return Deg::of(d.a - 1, 2 * d.b - 1);
    }
    if (sat == nullptr) throw std::invalid_argument("triangular default index needs SatInfo");
    return Deg::single(std::max<long>(sat->nu0, 1));
}

}  // namespace fibratrix
