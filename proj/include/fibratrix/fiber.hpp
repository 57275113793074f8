#pragma once

/*
 * Fiber analysis on top of matrix representations: membership, corank
 * readings, the finite/curve classification walk, preimage extraction for
 * corank-1 fibers, and curve-fiber equations.
 *
 * A Surface owns one parameterization and caches the representations it
 * has built, keyed by index. Everything else is a free function; reports
 * carry their evidence (the corank readings used) plus any warnings.
 */

#include "fibratrix/saturation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fibratrix {

// A point of projective space with a fixed normalization: the first
// nonzero coordinate is scaled to 1 (per factor for split P^1 x P^1
// points). Arity is checked by the consuming operation.
struct ProjPoint {
    std::vector<FieldElem> c;
    bool split = false;  // two-factor source point (c0:c1) x (c2:c3)

    static ProjPoint make(std::vector<FieldElem> coords, bool split_pair) {
        if (split_pair && coords.size() != 4)
            throw std::invalid_argument("a split point needs two coordinate pairs");
        ProjPoint p{std::move(coords), split_pair};
        if (split_pair) {
            p.normalize_range(0, 2);
            p.normalize_range(2, 4);
        } else {
            if (p.c.empty()) throw std::invalid_argument("empty coordinate tuple");
            p.normalize_range(0, p.c.size());
        }
        return p;
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) out += (split && i == 2) ? ";" : ":";
            out += c[i].str();
        }
        return out;
    }

  private:
    void normalize_range(std::size_t lo, std::size_t hi) {
        std::size_t piv = lo;
        while (piv < hi && c[piv].is_zero()) ++piv;
        if (piv == hi)
            throw std::invalid_argument("projective coordinates are all zero");
        FieldElem inv = c[piv].inv();
        for (std::size_t i = piv; i < hi; ++i) c[i] *= inv;
    }
};

// "a:b:c" or "a:b;c:d"; scalars in the active field ("2", "-1/3", ...).
inline ProjPoint parse_point(const Field& field, const std::string& text) {
    std::vector<FieldElem> coords;
    bool split = text.find(';') != std::string::npos;
    std::size_t group_break = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size() && text[i] != ':' && text[i] != ';') continue;
        std::size_t a = start, b = i;
        while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
        if (a == b) throw std::invalid_argument("empty coordinate in point '" + text + "'");
        coords.push_back(parse_scalar(field, text.substr(a, b - a)));
        if (i < text.size() && text[i] == ';') group_break = coords.size();
        start = i + 1;
    }
    if (split && group_break != 2)
        throw std::invalid_argument("a split point needs the form a:b;c:d");
    return ProjPoint::make(std::move(coords), split);
}

// One parameterization plus its cached derived data. Building a
// representation twice (racing threads) is harmless; the first insert wins.
class Surface {
  public:
    explicit Surface(Parameterization phi) : phi_(std::move(phi)) {}

    const Parameterization& phi() const { return phi_; }

    const SatInfo& sat() const {
        std::lock_guard<std::mutex> lk(mu_);
        if (!sat_) sat_ = compute_nu0(phi_);
        return *sat_;
    }

    Deg default_index() const {
        if (phi_.ring.kind == RingKind::Tensor) return default_rep_index(phi_, nullptr);
        return default_rep_index(phi_, &sat());
    }

    const MatrixRep& rep(const Deg& nu) const {
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = cache_.find(nu);
            if (it != cache_.end()) return *it->second;
        }
        auto built = std::make_shared<const MatrixRep>(build_matrix_rep(phi_, nu));
        std::lock_guard<std::mutex> lk(mu_);
        auto [it, fresh] = cache_.emplace(nu, std::move(built));
        return *it->second;
    }

  private:
    Parameterization phi_;
    mutable std::mutex mu_;
    mutable std::optional<SatInfo> sat_;
    mutable std::map<Deg, std::shared_ptr<const MatrixRep>> cache_;
};

enum class FiberKind { OffSurface, Finite, Curve };

inline std::string_view fiber_kind_str(FiberKind k) {
    switch (k) {
        case FiberKind::OffSurface: return "off_surface";
        case FiberKind::Finite: return "finite";
        default: return "curve";
    }
}

struct FiberReport {
    FiberKind kind = FiberKind::OffSurface;
    std::vector<std::pair<Deg, long>> coranks;  // readings, in the order taken
    long degree = 0;                            // finite fibers
    long curve_degree = 0;                      // curve fibers: delta, or e1
    long curve_degree2 = 0;                     // tensor curve fibers: e2
    long hilbert_constant = 0;                  // c in HP(t) = delta*t + c
    long residual_finite_degree = 0;            // N_res bound on extra points
    std::optional<MultiPoly> curve_equation;    // triangular curve fibers
    bool below_threshold = false;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::span<const FieldElem, 4> span4(const ProjPoint& p) {
    return std::span<const FieldElem, 4>(p.c.data(), 4);
}

inline void require_target(const ProjPoint& p) {
    if (p.split || p.c.size() != 4)
        throw std::invalid_argument("expected a point of the target P^3 (four coordinates)");
}

inline void require_source(const Parameterization& phi, const ProjPoint& p) {
    if (phi.ring.kind == RingKind::Triangular) {
        if (p.split || p.c.size() != 3)
            throw std::invalid_argument("expected a source point with three coordinates");
    } else if (!p.split) {
        throw std::invalid_argument("expected a split source point a:b;c:d");
    }
}

// f(s), or nullopt when s is a base point
inline std::optional<ProjPoint> image_point(const Parameterization& phi, const ProjPoint& s) {
    std::vector<FieldElem> y;
    bool nonzero = false;
    for (int j = 0; j < 4; ++j) {
        y.push_back(phi.f[j].eval(std::span<const FieldElem>(s.c.data(), s.c.size())));
        nonzero = nonzero || !y.back().is_zero();
    }
    if (!nonzero) return std::nullopt;
    return ProjPoint::make(std::move(y), false);
}

inline void verify_preimage(const Parameterization& phi, const ProjPoint& s,
                            const ProjPoint& P) {
    auto img = image_point(phi, s);
    bool ok = img.has_value();
    if (ok)
        for (int j = 0; j < 4 && ok; ++j) ok = img->c[j] == P.c[j];
    if (!ok)
        throw MathError("extracted point " + s.str() + " does not map to " + P.str());
}

}  // namespace detail

inline long corank_at(const Surface& surf, const Deg& nu, const ProjPoint& P) {
    detail::require_target(P);
    const MatrixRep& m = surf.rep(nu);
    ExactMatrix ev = evaluate_rep(m, detail::span4(P));
    return static_cast<long>(ev.rows() - rank(ev));
}

inline bool membership(const Surface& surf, const ProjPoint& P) {
    return corank_at(surf, surf.default_index(), P) > 0;
}

// Equation of the one-dimensional part of the fiber over P: the gcd of the
// forms l_i(f) = f_i - p_i*f_j, where x_j is the first nonzero coordinate
// of P. Constant (normalized to 1) when the fiber is finite.
inline MultiPoly fiber_curve(const Surface& surf, const ProjPoint& P) {
    const Parameterization& phi = surf.phi();
    detail::require_triangular(phi, "the fiber curve equation");
    detail::require_target(P);
    std::size_t j = 0;
    while (P.c[j].is_zero()) ++j;  // normalization guarantees one exists
    std::vector<MultiPoly> ell;
    for (std::size_t i = 0; i < 4; ++i) {
        if (i == j) continue;
        ell.push_back(phi.f[i] - phi.f[j].scaled(P.c[i]));
    }
    bool all_zero = true;
    for (const auto& e : ell) all_zero = all_zero && e.is_zero();
    if (all_zero)
        throw MathError("the fiber equations vanish identically; "
                        "the coordinate forms are proportional");
    return multivariate_gcd(ell);
}

// Classification walk for triangular input. Readings start at the default
// index max(nu0, 1) unless overridden; overrides below nu0 are allowed but
// flagged, since coranks there carry no fiber meaning.
inline FiberReport classify_fiber(const Surface& surf, const ProjPoint& P,
                                  std::optional<long> nu_override = std::nullopt) {
    const Parameterization& phi = surf.phi();
    detail::require_triangular(phi, "fiber classification");
    detail::require_target(P);
    const SatInfo& sat = surf.sat();
    const long d = phi.d().a;
    const long nu = nu_override ? *nu_override : std::max<long>(sat.nu0, 1);
    if (nu < 0) throw std::invalid_argument("representation index must be nonnegative");

    FiberReport out;
    out.below_threshold = nu < sat.nu0;
    if (out.below_threshold)
        out.warnings.push_back("index " + std::to_string(nu) + " is below the threshold " +
                               std::to_string(sat.nu0) + "; readings carry no guarantee");

    const long r = corank_at(surf, Deg::single(nu), P);
    out.coranks.emplace_back(Deg::single(nu), r);
    if (r == 0) {
        out.kind = FiberKind::OffSurface;
        return out;
    }
    // One-matrix shortcut: a corank at most nu certifies a finite fiber,
    // valid on nu0 <= nu <= 2d-2 (d = 1 has no curve fibers to miss).
    const bool shortcut_range = !out.below_threshold && (d == 1 || nu <= 2 * d - 2);
    if (shortcut_range && r <= nu) {
        out.kind = FiberKind::Finite;
        out.degree = r;
        return out;
    }

    const long r2 = corank_at(surf, Deg::single(nu + 1), P);
    out.coranks.emplace_back(Deg::single(nu + 1), r2);
    if (r2 == r) {
        out.kind = FiberKind::Finite;
        out.degree = r;
        return out;
    }
    if (r2 < r) {
        out.warnings.push_back("corank decreased from " + std::to_string(r) + " to " +
                               std::to_string(r2) +
                               " between consecutive indices; hypotheses (H) likely violated");
        out.kind = FiberKind::Finite;
        out.degree = r2;
        return out;
    }
    out.kind = FiberKind::Curve;
    out.curve_degree = r2 - r;
    out.hilbert_constant = r - out.curve_degree * nu;
    out.residual_finite_degree =
        binomial(out.curve_degree - 1, 2) + out.hilbert_constant - 1;
    if (out.residual_finite_degree < 0)
        out.warnings.push_back("negative residual count; hypotheses (H) likely violated");
    out.curve_equation = fiber_curve(surf, P);
    return out;
}

// Tensor analogue: read the corank at the corner (d1-1, 2d2-1) and compare
// with the two neighbours to get the growth (e1, e2) of the fiber Hilbert
// function, one slope per factor.
inline FiberReport classify_fiber_bigraded(const Surface& surf, const ProjPoint& P) {
    const Parameterization& phi = surf.phi();
    if (phi.ring.kind != RingKind::Tensor)
        throw std::invalid_argument("bigraded classification is defined for tensor input");
    detail::require_target(P);
    const Deg d = phi.d();
    const Deg nu = Deg::of(d.a - 1, 2 * d.b - 1);

    FiberReport out;
    const long r = corank_at(surf, nu, P);
    out.coranks.emplace_back(nu, r);
    if (r == 0) {
        out.kind = FiberKind::OffSurface;
        return out;
    }
    const long r1 = corank_at(surf, Deg::of(d.a, 2 * d.b - 1), P);
    const long r2 = corank_at(surf, Deg::of(d.a - 1, 2 * d.b), P);
    out.coranks.emplace_back(Deg::of(d.a, 2 * d.b - 1), r1);
    out.coranks.emplace_back(Deg::of(d.a - 1, 2 * d.b), r2);
    const long e1 = r1 - r, e2 = r2 - r;
    if (e1 == 0 && e2 == 0) {
        out.kind = FiberKind::Finite;
        out.degree = r;
        return out;
    }
    if (e1 < 0 || e2 < 0) {
        out.warnings.push_back("corank decreased toward a larger index; "
                               "hypotheses (H) likely violated");
        out.kind = FiberKind::Finite;
        out.degree = std::min({r, r1, r2});
        return out;
    }
    out.kind = FiberKind::Curve;
    out.curve_degree = e1;
    out.curve_degree2 = e2;
    out.hilbert_constant = r - e1 * (d.a - 1) - e2 * (2 * d.b - 1);
    out.residual_finite_degree = (e1 - 1) * (e2 - 1) + out.hilbert_constant - 1;
    if (out.residual_finite_degree < 0)
        out.warnings.push_back("negative residual count; hypotheses (H) likely violated");
    return out;
}

// Dispatch on the source ring.
inline FiberReport classify_point(const Surface& surf, const ProjPoint& P,
                                  std::optional<long> nu_override = std::nullopt) {
    if (surf.phi().ring.kind == RingKind::Tensor) {
        if (nu_override)
            throw std::invalid_argument("bigraded classification has fixed corner indices");
        return classify_fiber_bigraded(surf, P);
    }
    return classify_fiber(surf, P, nu_override);
}

/*
 * Invert a corank-1 fiber. The left kernel of the evaluated matrix at
 * index 2d-2 is spanned by the vector of monomial evaluations (m(s))_m of
 * the preimage s, so ratios of adjacent entries recover the coordinates:
 * with v[s_i^nu] != 0, s = (v[s_i^{nu-1}s_0] : v[s_i^{nu-1}s_1] : ...).
 * The result is verified against phi before being returned.
 */
inline ProjPoint unique_preimage(const Surface& surf, const ProjPoint& P) {
    const Parameterization& phi = surf.phi();
    detail::require_target(P);

    if (phi.ring.kind == RingKind::Triangular) {
        const long d = phi.d().a;
        if (d < 2) throw MathError("preimage extraction needs degree at least 2");
        const long nu = 2 * d - 2;
        const MatrixRep& m = surf.rep(Deg::single(nu));
        ExactMatrix kern = left_kernel(evaluate_rep(m, detail::span4(P)));
        if (kern.cols() != 1)
            throw MathError("fiber is not a single reduced point (corank " +
                            std::to_string(kern.cols()) + " at index " + std::to_string(nu) +
                            ")");
        MonoIndex idx(m.row_basis);
        int anchor = -1;
        for (int i = 0; i < 3 && anchor < 0; ++i) {
            Monomial pure;
            pure.e[i] = static_cast<std::uint16_t>(nu);
            if (!kern.at(idx.of(pure), 0).is_zero()) anchor = i;
        }
        if (anchor < 0)
            throw MathError("kernel vector has no pure-power entry; not an evaluation vector");
        std::vector<FieldElem> s;
        for (int k = 0; k < 3; ++k) {
            Monomial mono;
            mono.e[anchor] = static_cast<std::uint16_t>(nu - 1);
            mono.e[k] = static_cast<std::uint16_t>(mono.e[k] + 1);
            s.push_back(kern.at(idx.of(mono), 0));
        }
        ProjPoint out = ProjPoint::make(std::move(s), false);
        detail::verify_preimage(phi, out, P);
        return out;
    }

    FiberReport rep = classify_fiber_bigraded(surf, P);
    if (rep.kind != FiberKind::Finite || rep.degree != 1)
        throw MathError("fiber is not a single reduced point (" +
                        std::string(fiber_kind_str(rep.kind)) + ")");
    const Deg d = phi.d();
    const long n1 = std::max<long>(d.a - 1, 1), n2 = 2 * d.b - 1;
    const MatrixRep& m = surf.rep(Deg::of(n1, n2));
    ExactMatrix kern = left_kernel(evaluate_rep(m, detail::span4(P)));
    if (kern.cols() != 1)
        throw MathError("corank is not 1 at the extraction index (" + std::to_string(n1) +
                        "," + std::to_string(n2) + ")");
    MonoIndex idx(m.row_basis);
    auto entry = [&](long a0, long a1, long b0, long b1) {
        Monomial mono;
        mono.e = {static_cast<std::uint16_t>(a0), static_cast<std::uint16_t>(a1),
                  static_cast<std::uint16_t>(b0), static_cast<std::uint16_t>(b1)};
        return kern.at(idx.of(mono), 0);
    };
    int ai = -1, aj = -1;
    for (int i = 0; i < 2 && ai < 0; ++i)
        for (int j = 0; j < 2 && ai < 0; ++j)
            if (!entry(i == 0 ? n1 : 0, i == 0 ? 0 : n1, j == 0 ? n2 : 0, j == 0 ? 0 : n2)
                     .is_zero()) {
                ai = i;
                aj = j;
            }
    if (ai < 0)
        throw MathError("kernel vector has no pure-power entry; not an evaluation vector");
    const long tb0 = aj == 0 ? n2 : 0, tb1 = aj == 0 ? 0 : n2;
    std::vector<FieldElem> coords;
    for (int k = 0; k < 2; ++k) {  // s-factor: s_ai^{n1-1} * s_k
        long a0 = (ai == 0 ? n1 - 1 : 0) + (k == 0 ? 1 : 0);
        long a1 = (ai == 1 ? n1 - 1 : 0) + (k == 1 ? 1 : 0);
        coords.push_back(entry(a0, a1, tb0, tb1));
    }
    const long sa0 = ai == 0 ? n1 : 0, sa1 = ai == 1 ? n1 : 0;
    for (int k = 0; k < 2; ++k) {  // t-factor: t_aj^{n2-1} * t_k
        long b0 = (aj == 0 ? n2 - 1 : 0) + (k == 0 ? 1 : 0);
        long b1 = (aj == 1 ? n2 - 1 : 0) + (k == 1 ? 1 : 0);
        coords.push_back(entry(sa0, sa1, b0, b1));
    }
    ProjPoint out = ProjPoint::make(std::move(coords), true);
    detail::verify_preimage(phi, out, P);
    return out;
}

struct LowDegreePieces {
    bool curves_excluded = false;  // empty base locus: no curve fibers at all
    std::vector<std::pair<long, std::vector<GradedPoly>>> pieces;
};

// Every curve-fiber equation h_p divides every form listed here, so empty
// output (with a nonempty base locus) still narrows the possibilities.
inline LowDegreePieces low_degree_sat_elements(const Surface& surf) {
    const Parameterization& phi = surf.phi();
    detail::require_triangular(phi, "the low-degree saturation scan");
    const SatInfo& sat = surf.sat();
    LowDegreePieces out;
    out.curves_excluded = sat.empty_base_locus;
    if (out.curves_excluded) return out;
    const long d = phi.d().a;
    for (long mu = sat.indeg_sat; mu < d; ++mu) {
        auto piece = saturation_piece(phi, mu);
        if (!piece.empty()) out.pieces.emplace_back(mu, std::move(piece));
    }
    return out;
}

struct PullbackResult {
    ProjPoint image;
    FiberReport report;
};

// The multiple-point stratum of a parameter point: classify the fiber
// over its own image.
inline PullbackResult pullback_classify(const Surface& surf, const ProjPoint& s,
                                        std::optional<long> nu_override = std::nullopt) {
    const Parameterization& phi = surf.phi();
    detail::require_source(phi, s);
    auto image = detail::image_point(phi, s);
    if (!image)
        throw MathError("base point of the parameterization; no image to classify");
    FiberReport rep = classify_point(surf, *image, nu_override);
    return PullbackResult{std::move(*image), std::move(rep)};
}

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool structural_ok = false;
    bool birational_probable = false;

    bool ok() const { return structural_ok && birational_probable; }
};

namespace detail {

inline FieldElem random_coordinate(const Field& field, std::mt19937_64& rng) {
    if (field.rational())
        return FieldElem::of(field, static_cast<long long>(rng() % 19) - 9);
    return FieldElem::of(field, static_cast<long long>(rng() % field.p));
}

inline ProjPoint random_source_point(const Parameterization& phi, std::mt19937_64& rng) {
    const bool split = phi.ring.kind == RingKind::Tensor;
    const std::size_t n = split ? 4 : 3;
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<FieldElem> c;
        for (std::size_t i = 0; i < n; ++i) c.push_back(random_coordinate(phi.field, rng));
        bool zero_factor = false;
        if (split) {
            zero_factor = (c[0].is_zero() && c[1].is_zero()) ||
                          (c[2].is_zero() && c[3].is_zero());
        } else {
            zero_factor = c[0].is_zero() && c[1].is_zero() && c[2].is_zero();
        }
        if (zero_factor) continue;
        ProjPoint s = ProjPoint::make(std::move(c), split);
        if (image_point(phi, s)) return s;  // skip base points
    }
    throw MathError("could not sample a parameter point off the base locus");
}

}  // namespace detail

// Structural checks plus a seeded probabilistic birationality probe:
// the fibers over five random parameter points must all be single reduced
// points. A probe failure is advisory, not fatal.
inline ValidationReport validate(const Surface& surf, std::uint64_t seed = kDefaultSeed) {
    ValidationReport out;
    out.checks = structural_checks(surf.phi());
    out.structural_ok = checks_passed(out.checks);
    if (!out.structural_ok) {
        out.checks.push_back(
            {"birational_probe", false, "skipped; structural checks failed"});
        return out;
    }
    std::mt19937_64 rng(seed);
    int hits = 0;
    std::string detail_msg;
    for (int t = 0; t < 5; ++t) {
        ProjPoint s = detail::random_source_point(surf.phi(), rng);
        PullbackResult res = pullback_classify(surf, s);
        if (res.report.kind == FiberKind::Finite && res.report.degree == 1) {
            ++hits;
        } else if (detail_msg.empty()) {
            detail_msg = "fiber over phi(" + s.str() + ") is " +
                         std::string(fiber_kind_str(res.report.kind));
            if (res.report.kind == FiberKind::Finite)
                detail_msg += " of degree " + std::to_string(res.report.degree);
        }
    }
    out.birational_probable = hits == 5;
    out.checks.push_back({"birational_probe", out.birational_probable,
                          out.birational_probable
                              ? "probabilistic pass (5/5 seeded points gave degree-1 fibers)"
                              : detail_msg});
    return out;
}

}  // namespace fibratrix
