#pragma once

// Stock parameterizations shared across the test binaries.

#include "fibratrix/parameterization.hpp"

namespace testutil {

using namespace fibratrix;

// Unit sphere, the classic degree-2 birational map with two base points.
inline Parameterization sphere(const Field& f = field_q()) {
    return parse_parameterization(RingSpec{RingKind::Triangular}, f,
                                  {"s0^2 + s1^2 + s2^2", "2*s0*s2", "2*s0*s1",
                                   "s0^2 - s1^2 - s2^2"});
}

// A plane, parameterized 1:1 away from three base points. The last two
// coordinate forms coincide, so the independence check fails and callers
// have to override validation to work with it.
inline Parameterization dependent_plane(const Field& f = field_q()) {
    return parse_parameterization(RingSpec{RingKind::Triangular}, f,
                                  {"s1*s2", "s0^2 + s0*s1 + s0*s2", "s0*s1", "s0*s1"});
}

// Steiner's Roman surface (shifted), base point free, generically 1:1
// with a double-point curve.
inline Parameterization roman(const Field& f = field_q()) {
    return parse_parameterization(RingSpec{RingKind::Triangular}, f,
                                  {"s1*s2", "s0*s2", "s0*s1", "s0^2 + s1^2 + s2^2"});
}

// Base point free squares; handy when an empty base locus is wanted.
inline Parameterization squares(const Field& f = field_q()) {
    return parse_parameterization(RingSpec{RingKind::Triangular}, f,
                                  {"s0^2", "s1^2", "s2^2", "(s0 + s1 + s2)^2"});
}

// Segre embedding of P^1 x P^1, the smooth quadric X0*X3 = X1*X2.
inline Parameterization segre(const Field& f = field_q()) {
    return parse_parameterization(RingSpec{RingKind::Tensor}, f,
                                  {"s0*t0", "s0*t1", "s1*t0", "s1*t1"});
}

inline std::array<FieldElem, 4> pt4(const Field& f, long long a, long long b, long long c,
                                    long long d) {
    return {FieldElem::of(f, a), FieldElem::of(f, b), FieldElem::of(f, c),
            FieldElem::of(f, d)};
}

}  // namespace testutil
