#pragma once

/*
 * Sparse multivariate polynomials over the active field, plus the dense
 * graded-piece view used by the linear-algebra layers.
 *
 * Terms are kept in a map under graded-lex order, so the leading term is
 * always the last entry and printing is canonical (descending graded-lex).
 */

#include "fibratrix/ring.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace fibratrix {

class MultiPoly {
  public:
    MultiPoly() = default;
    MultiPoly(const RingSpec& ring, const Field& field) : ring_(ring), field_(field) {}

    static MultiPoly zero(const RingSpec& r, const Field& f) { return MultiPoly(r, f); }
    static MultiPoly constant(const RingSpec& r, const Field& f, const FieldElem& c) {
        MultiPoly p(r, f);
        p.add_term(Monomial{}, c);
        return p;
    }
    static MultiPoly variable(const RingSpec& r, const Field& f, int i) {
        MultiPoly p(r, f);
        Monomial m;
        m.e[i] = 1;
        p.add_term(m, FieldElem::one(f));
        return p;
    }

    const RingSpec& ring() const { return ring_; }
    const Field& field() const { return field_; }
    const std::map<Monomial, FieldElem, MonoLess>& terms() const { return t_; }

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const {
        return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one());
    }

    void add_term(const Monomial& m, const FieldElem& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = t_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    // leading term under graded lex; polynomial must be nonzero
    std::pair<Monomial, FieldElem> leading() const {
        if (t_.empty()) throw MathError("leading term of the zero polynomial");
        return *t_.rbegin();
    }

    long total_degree() const {  // -1 for the zero polynomial
        return t_.empty() ? -1 : t_.rbegin()->first.total_degree();
    }

    // the common degree of all terms, if the polynomial is homogeneous
    std::optional<Deg> homogeneous_degree() const {
        if (t_.empty()) return std::nullopt;
        Deg d = t_.begin()->first.degree(ring_);
        for (const auto& [m, c] : t_)
            if (!(m.degree(ring_) == d)) return std::nullopt;
        return d;
    }

    friend MultiPoly operator+(const MultiPoly& x, const MultiPoly& y) {
        check(x, y);
        MultiPoly r = x;
        for (const auto& [m, c] : y.t_) r.add_term(m, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& x, const MultiPoly& y) {
        check(x, y);
        MultiPoly r = x;
        for (const auto& [m, c] : y.t_) r.add_term(m, -c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& x, const MultiPoly& y) {
        check(x, y);
        MultiPoly r(x.ring_, x.field_);
        for (const auto& [mx, cx] : x.t_)
            for (const auto& [my, cy] : y.t_) r.add_term(mx.times(my), cx * cy);
        return r;
    }
    MultiPoly operator-() const {
        MultiPoly r(ring_, field_);
        for (const auto& [m, c] : t_) r.t_.emplace(m, -c);
        return r;
    }
    MultiPoly scaled(const FieldElem& s) const {
        MultiPoly r(ring_, field_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : t_) r.t_.emplace(m, c * s);
        return r;
    }
    MultiPoly times_monomial(const Monomial& m0, const FieldElem& s) const {
        MultiPoly r(ring_, field_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : t_) r.t_.emplace(m0.times(m), c * s);
        return r;
    }

    friend bool operator==(const MultiPoly& x, const MultiPoly& y) {
        return x.ring_ == y.ring_ && x.field_ == y.field_ && x.t_ == y.t_;
    }

    FieldElem eval(std::span<const FieldElem> point) const {
        if (static_cast<int>(point.size()) != ring_.nvars())
            throw std::invalid_argument("evaluation tuple has wrong arity");
        // per-variable power cache
        std::array<std::vector<FieldElem>, 4> pw;
        for (int i = 0; i < ring_.nvars(); ++i) pw[i].push_back(FieldElem::one(field_));
        FieldElem acc = FieldElem::zero(field_);
        for (const auto& [m, c] : t_) {
            FieldElem v = c;
            for (int i = 0; i < ring_.nvars(); ++i) {
                while (pw[i].size() <= m.e[i]) pw[i].push_back(pw[i].back() * point[i]);
                v *= pw[i][m.e[i]];
            }
            acc += v;
        }
        return acc;
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::string out;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            const auto& [m, c] = *it;
            bool neg = false;
            std::string cs = c.str();
            if (!cs.empty() && cs[0] == '-') {
                neg = true;
                cs.erase(0, 1);
            }
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            // A leading "-m^k" would reparse as (-m)^k under the grammar, so
            // spell the coefficient out whenever the sign starts the string.
            bool powered = false;
            for (int i = 0; i < 4; ++i) powered = powered || m.e[i] > 1;
            if (m.is_one()) out += cs;
            else if (cs == "1" && !(neg && out == "-" && powered)) out += m.str(ring_);
            else out += cs + "*" + m.str(ring_);
        }
        return out;
    }

  private:
    static void check(const MultiPoly& x, const MultiPoly& y) {
        if (!(x.ring_ == y.ring_) || !(x.field_ == y.field_))
            throw std::invalid_argument("ring or field mismatch between polynomials");
    }

    RingSpec ring_;
    Field field_;
    std::map<Monomial, FieldElem, MonoLess> t_;
};

// Dense coefficient view of one graded piece, over monomial_basis(ring, deg).
struct GradedPoly {
    RingSpec ring;
    Field field;
    Deg deg;
    std::vector<FieldElem> coeff;

    MultiPoly to_multi() const {
        MultiPoly p(ring, field);
        auto basis = monomial_basis(ring, deg);
        for (std::size_t i = 0; i < basis.size(); ++i) p.add_term(basis[i], coeff[i]);
        return p;
    }
};

inline GradedPoly to_graded(const MultiPoly& p, const Deg& deg) {
    GradedPoly g{p.ring(), p.field(), deg, {}};
    auto basis = monomial_basis(p.ring(), deg);
    g.coeff.assign(basis.size(), FieldElem::zero(p.field()));
    if (p.is_zero()) return g;
    auto hd = p.homogeneous_degree();
    if (!hd || !(*hd == deg))
        throw MathError("polynomial is not homogeneous of degree " + deg.str());
    std::map<Monomial, std::size_t, MonoLess> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    for (const auto& [m, c] : p.terms()) g.coeff[index.at(m)] = c;
    return g;
}

// p(x0..x3) with each xj replaced by images[j]; images share ring and field.
inline MultiPoly substitute_forms(const MultiPoly& p,
                                  const std::array<MultiPoly, 4>& images) {
    if (p.ring().kind != RingKind::Target)
        throw std::invalid_argument("substitute expects a target-ring polynomial");
    const RingSpec& src = images[0].ring();
    const Field& f = images[0].field();
    for (const auto& g : images)
        if (!(g.ring() == src) || !(g.field() == f))
            throw std::invalid_argument("substitution images disagree on ring or field");

    std::array<std::vector<MultiPoly>, 4> pw;
    for (int j = 0; j < 4; ++j)
        pw[j].push_back(MultiPoly::constant(src, f, FieldElem::one(f)));
    MultiPoly acc(src, f);
    for (const auto& [m, c] : p.terms()) {
        MultiPoly term = MultiPoly::constant(src, f, c);
        for (int j = 0; j < 4; ++j) {
            while (pw[j].size() <= m.e[j]) pw[j].push_back(pw[j].back() * images[j]);
            term = term * pw[j][m.e[j]];
        }
        acc = acc + term;
    }
    return acc;
}

}  // namespace fibratrix
