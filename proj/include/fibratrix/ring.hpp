#pragma once

/*
 * Graded source and target rings.
 *
 * Three fixed shapes appear: k[s0,s1,s2] with total degree (triangular),
 * k[s0,s1;t0,t1] with bidegree (tensor), and k[X0..X3] for implicit-space
 * polynomials (target). Monomials are exponent tuples in four slots; unused
 * slots stay zero, so one graded-lex comparator serves every ring.
 *
 * The basis order of a graded piece is part of the public interface: within
 * a piece, monomials are listed by lexicographically descending exponent
 * tuple. For degree 1 triangular that is [s0, s1, s2]; for bidegree (1,1)
 * tensor it is [s0*t0, s0*t1, s1*t0, s1*t1].
 */

#include "fibratrix/numeric.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fibratrix {

enum class RingKind { Triangular, Tensor, Target };

struct RingSpec {
    RingKind kind = RingKind::Triangular;

    int nvars() const {
        return kind == RingKind::Triangular ? 3 : 4;
    }
    std::string_view var(int i) const {
        static constexpr std::string_view tri[] = {"s0", "s1", "s2"};
        static constexpr std::string_view ten[] = {"s0", "s1", "t0", "t1"};
        static constexpr std::string_view tgt[] = {"X0", "X1", "X2", "X3"};
        switch (kind) {
            case RingKind::Triangular: return tri[i];
            case RingKind::Tensor: return ten[i];
            default: return tgt[i];
        }
    }
    int var_index(std::string_view name) const {
        for (int i = 0; i < nvars(); ++i)
            if (var(i) == name) return i;
        return -1;
    }
    std::string str() const {
        switch (kind) {
            case RingKind::Triangular: return "triangular";
            case RingKind::Tensor: return "tensor";
            default: return "target";
        }
    }
    friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

// Degree index: a single total degree, or a bidegree for the tensor ring.
struct Deg {
    long a = 0;
    long b = 0;
    bool pair = false;

    static Deg single(long n) { return Deg{n, 0, false}; }
    static Deg of(long n1, long n2) { return Deg{n1, n2, true}; }

    friend Deg operator+(const Deg& x, const Deg& y) {
        if (x.pair != y.pair) throw std::invalid_argument("degree shape mismatch");
        return Deg{x.a + y.a, x.b + y.b, x.pair};
    }
    friend bool operator==(const Deg&, const Deg&) = default;
    friend bool operator<(const Deg& x, const Deg& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    }
    std::string str() const {
        if (!pair) return std::to_string(a);
        return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
};

struct Monomial {
    std::array<std::uint16_t, 4> e{0, 0, 0, 0};

    long total_degree() const { return e[0] + e[1] + e[2] + e[3]; }

    // degree in the given ring's grading
    Deg degree(const RingSpec& ring) const {
        if (ring.kind == RingKind::Tensor)
            return Deg::of(e[0] + e[1], e[2] + e[3]);
        return Deg::single(total_degree());
    }

    Monomial times(const Monomial& o) const {
        Monomial m;
        for (int i = 0; i < 4; ++i) {
            unsigned s = unsigned(e[i]) + unsigned(o.e[i]);
            if (s > 0xffff) throw MathError("monomial exponent overflow");
            m.e[i] = static_cast<std::uint16_t>(s);
        }
        return m;
    }

    bool divides(const Monomial& o) const {
        for (int i = 0; i < 4; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    Monomial quotient_into(const Monomial& o) const {  // o / this
        Monomial m;
        for (int i = 0; i < 4; ++i) m.e[i] = static_cast<std::uint16_t>(o.e[i] - e[i]);
        return m;
    }

    bool is_one() const { return total_degree() == 0; }

    std::string str(const RingSpec& ring) const {
        std::string s;
        for (int i = 0; i < ring.nvars(); ++i) {
            if (e[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += std::string(ring.var(i));
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
        return s.empty() ? "1" : s;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// graded lexicographic, ascending (map order; the leading term is the last)
struct MonoLess {
    bool operator()(const Monomial& x, const Monomial& y) const {
        long dx = x.total_degree(), dy = y.total_degree();
        if (dx != dy) return dx < dy;
        return x.e < y.e;  // array lex
    }
};

inline long binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline long dim_piece(const RingSpec& ring, const Deg& d) {
    switch (ring.kind) {
        case RingKind::Triangular:
            return d.a < 0 ? 0 : binomial(d.a + 2, 2);
        case RingKind::Tensor:
            return (d.a < 0 || d.b < 0) ? 0 : (d.a + 1) * (d.b + 1);
        default:
            return d.a < 0 ? 0 : binomial(d.a + 3, 3);
    }
}

namespace detail {

// all exponent tuples on vars [lo, hi) summing to total, lex descending
inline void enumerate_lex_desc(int lo, int hi, long total, Monomial cur,
                               std::vector<Monomial>& out) {
    if (lo + 1 == hi) {
        cur.e[lo] = static_cast<std::uint16_t>(total);
        out.push_back(cur);
        return;
    }
    for (long v = total; v >= 0; --v) {
        cur.e[lo] = static_cast<std::uint16_t>(v);
        enumerate_lex_desc(lo + 1, hi, total - v, cur, out);
    }
}

}  // namespace detail

// Position lookup within a fixed monomial basis.
class MonoIndex {
  public:
    explicit MonoIndex(const std::vector<Monomial>& basis) {
        for (std::size_t i = 0; i < basis.size(); ++i) ix_.emplace(basis[i], i);
    }
    std::size_t of(const Monomial& m) const {
        auto it = ix_.find(m);
        if (it == ix_.end()) throw std::logic_error("monomial outside the indexed basis");
        return it->second;
    }
    const std::size_t* find(const Monomial& m) const {
        auto it = ix_.find(m);
        return it == ix_.end() ? nullptr : &it->second;
    }

  private:
    std::map<Monomial, std::size_t, MonoLess> ix_;
};

// Monomial basis of the graded piece, in the pinned order.
inline std::vector<Monomial> monomial_basis(const RingSpec& ring, const Deg& d) {
    std::vector<Monomial> out;
    if (ring.kind == RingKind::Tensor) {
        if (!d.pair) throw std::invalid_argument("tensor ring needs a bidegree");
        if (d.a < 0 || d.b < 0) return out;
        std::vector<Monomial> spart, tpart;
        detail::enumerate_lex_desc(0, 2, d.a, Monomial{}, spart);
        detail::enumerate_lex_desc(2, 4, d.b, Monomial{}, tpart);
        for (const auto& sm : spart)
            for (const auto& tm : tpart) out.push_back(sm.times(tm));
        return out;
    }
    if (d.pair) throw std::invalid_argument("total-degree ring got a bidegree");
    if (d.a < 0) return out;
    detail::enumerate_lex_desc(0, ring.nvars(), d.a, Monomial{}, out);
    return out;
}

}  // namespace fibratrix
