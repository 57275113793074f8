#pragma once

/*
 * Exact scalar arithmetic. The coefficient field is chosen at runtime and
 * attached to every value: arbitrary-precision rationals (p == 0) or the
 * prime field F_p (0 < p < 2^31). Values in one computation never mix fields.
 *
 * Rationals are kept in lowest terms with a positive denominator, which is
 * what boost's cpp_rational guarantees. Residues are kept in [0, p).
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fibratrix {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Arithmetic failures that map to a well-defined outcome for the caller
// (division by zero, corank precondition violations, unreducible input, ...).
struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every seeded draw in the library starts from this constant unless the
// caller passes a seed, so repeated runs give identical output.
inline constexpr std::uint64_t kDefaultSeed = 1000003;

struct Field {
    std::uint64_t p = 0;  // 0 means the rationals

    bool rational() const { return p == 0; }
    friend bool operator==(const Field&, const Field&) = default;
    std::string str() const { return p == 0 ? "q" : "fp:" + std::to_string(p); }
};

inline Field field_q() { return Field{0}; }

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline Field field_fp(std::uint64_t p) {
    if (p < 2 || p >= (1ull << 31) || !is_prime_u64(p))
        throw std::invalid_argument("field modulus must be a prime below 2^31: " +
                                    std::to_string(p));
    return Field{p};
}

namespace detail {

inline std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;  // p < 2^31, no overflow
    return s >= p ? s - p : s;
}

inline std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    if (a == 0) throw MathError("division by zero in F_p");
    // extended Euclid on signed ints; p < 2^31 keeps everything in range
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p),
                 nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw MathError("modulus not prime in mod_inv");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

// residue of an arbitrary integer, handling negatives
inline std::uint64_t mod_of_int(const Int& n, std::uint64_t p) {
    Int r = n % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    return r.convert_to<std::uint64_t>();
}

}  // namespace detail

class FieldElem {
  public:
    FieldElem() = default;  // rational zero

    static FieldElem zero(const Field& f) { return of(f, 0); }
    static FieldElem one(const Field& f) { return of(f, 1); }

    static FieldElem of(const Field& f, long long n) {
        FieldElem e;
        e.p_ = f.p;
        if (f.rational()) e.q_ = n;
        else e.r_ = detail::mod_of_int(Int(n), f.p);
        return e;
    }

    static FieldElem of(const Field& f, const Int& n) {
        FieldElem e;
        e.p_ = f.p;
        if (f.rational()) e.q_ = Rat(n);
        else e.r_ = detail::mod_of_int(n, f.p);
        return e;
    }

    static FieldElem of(const Field& f, const Rat& q) {
        FieldElem e;
        e.p_ = f.p;
        if (f.rational()) { e.q_ = q; return e; }
        Int den = denominator(q);
        std::uint64_t dm = detail::mod_of_int(den, f.p);
        if (dm == 0)
            throw MathError("rational has no reduction mod " + std::to_string(f.p));
        e.r_ = detail::mod_mul(detail::mod_of_int(numerator(q), f.p),
                               detail::mod_inv(dm, f.p), f.p);
        return e;
    }

    Field field() const { return Field{p_}; }
    bool is_zero() const { return p_ == 0 ? q_.is_zero() : r_ == 0; }
    bool is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

    const Rat& rat() const {
        if (p_ != 0) throw std::logic_error("rat() on a modular value");
        return q_;
    }
    std::uint64_t residue() const {
        if (p_ == 0) throw std::logic_error("residue() on a rational value");
        return r_;
    }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        check(a, b);
        FieldElem e; e.p_ = a.p_;
        if (a.p_ == 0) e.q_ = a.q_ + b.q_;
        else e.r_ = detail::mod_add(a.r_, b.r_, a.p_);
        return e;
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
        check(a, b);
        FieldElem e; e.p_ = a.p_;
        if (a.p_ == 0) e.q_ = a.q_ - b.q_;
        else e.r_ = detail::mod_sub(a.r_, b.r_, a.p_);
        return e;
    }
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        check(a, b);
        FieldElem e; e.p_ = a.p_;
        if (a.p_ == 0) e.q_ = a.q_ * b.q_;
        else e.r_ = detail::mod_mul(a.r_, b.r_, a.p_);
        return e;
    }
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
        check(a, b);
        if (b.is_zero()) throw MathError("division by zero");
        FieldElem e; e.p_ = a.p_;
        if (a.p_ == 0) e.q_ = a.q_ / b.q_;
        else e.r_ = detail::mod_mul(a.r_, detail::mod_inv(b.r_, a.p_), a.p_);
        return e;
    }
    FieldElem operator-() const {
        FieldElem e; e.p_ = p_;
        if (p_ == 0) e.q_ = -q_;
        else e.r_ = r_ == 0 ? 0 : p_ - r_;
        return e;
    }
    FieldElem inv() const { return one(field()) / *this; }

    FieldElem& operator+=(const FieldElem& b) { return *this = *this + b; }
    FieldElem& operator-=(const FieldElem& b) { return *this = *this - b; }
    FieldElem& operator*=(const FieldElem& b) { return *this = *this * b; }
    FieldElem& operator/=(const FieldElem& b) { return *this = *this / b; }

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        return a.p_ == b.p_ && (a.p_ == 0 ? a.q_ == b.q_ : a.r_ == b.r_);
    }
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    // true for rationals > 0; for residues "positivity" is meaningless, always true
    bool positive_or_modular() const { return p_ != 0 || q_ > 0; }

    std::string str() const {
        if (p_ != 0) return std::to_string(r_);
        std::string s = numerator(q_).str();
        if (denominator(q_) != 1) s += "/" + denominator(q_).str();
        return s;
    }

  private:
    static void check(const FieldElem& a, const FieldElem& b) {
        if (a.p_ != b.p_)
            throw std::invalid_argument("field mismatch between operands");
    }

    Rat q_;
    std::uint64_t r_ = 0;
    std::uint64_t p_ = 0;
};

// "a", "-a", or "a/b" with optional sign; reduced into the given field
inline FieldElem parse_scalar(const Field& f, std::string_view text) {
    std::string s(text);
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return FieldElem::of(f, Rat(Int(s)));
        Int num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw MathError("zero denominator in scalar: " + s);
        return FieldElem::of(f, Rat(num) / Rat(den));
    } catch (const MathError&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed scalar: " + s);
    }
}

}  // namespace fibratrix
