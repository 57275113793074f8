#pragma once

/*
 * Dense exact matrices and the elimination kernel everything else sits on.
 *
 * Rank and row reduction over the rationals run fraction-free: rows are
 * scaled to integers, the forward pass is Bareiss (every intermediate entry
 * is a minor of the scaled matrix, so coefficient growth stays polynomial),
 * and only the back-substitution reintroduces fractions. Over F_p plain
 * elimination is used. Pivoting is "first nonzero in column order" in both
 * engines, so results are deterministic and reproducible bit for bit.
 *
 * Kernels are returned as the unique reduced column echelon basis: scanning
 * rows top to bottom, each column's first nonzero entry is 1, those pivot
 * rows increase strictly left to right, and a pivot row is zero in every
 * other column. Uniqueness of that form is what makes the output a stable
 * public contract rather than an arbitrary basis choice.
 */

#include "fibratrix/numeric.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace fibratrix {

class ExactMatrix {
  public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols, const Field& f)
        : rows_(rows), cols_(cols), field_(f),
          a_(rows * cols, FieldElem::zero(f)) {}

    static ExactMatrix identity(std::size_t n, const Field& f) {
        ExactMatrix m(n, n, f);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldElem::one(f);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    FieldElem& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const FieldElem& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    ExactMatrix transpose() const {
        ExactMatrix t(cols_, rows_, field_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix shape mismatch in +");
        ExactMatrix s(a.rows_, a.cols_, a.field_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) s.a_[i] = a.a_[i] + b.a_[i];
        return s;
    }

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix shape mismatch in *");
        ExactMatrix m(a.rows_, b.cols_, a.field_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a.at(r, k).is_zero()) continue;
                for (std::size_t c = 0; c < b.cols_; ++c)
                    m.at(r, c) += a.at(r, k) * b.at(k, c);
            }
        return m;
    }

    ExactMatrix scaled(const FieldElem& s) const {
        ExactMatrix m = *this;
        for (auto& e : m.a_) e *= s;
        return m;
    }

    bool is_zero() const {
        for (const auto& e : a_)
            if (!e.is_zero()) return false;
        return true;
    }

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ &&
               a.a_ == b.a_;
    }

    std::string str() const {
        std::string s;
        for (std::size_t r = 0; r < rows_; ++r) {
            s += "[ ";
            for (std::size_t c = 0; c < cols_; ++c) s += at(r, c).str() + " ";
            s += "]\n";
        }
        return s;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    Field field_;
    std::vector<FieldElem> a_;
};

namespace detail {

// rational matrix -> integer matrix with the same row spans
inline std::vector<std::vector<Int>> clear_denominators(const ExactMatrix& m) {
    std::vector<std::vector<Int>> z(m.rows(), std::vector<Int>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Int l = 1;
        for (std::size_t c = 0; c < m.cols(); ++c)
            l = boost::multiprecision::lcm(l, denominator(m.at(r, c).rat()));
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Rat& q = m.at(r, c).rat();
            z[r][c] = numerator(q) * (l / denominator(q));
        }
    }
    return z;
}

struct Echelon {
    std::vector<std::vector<Int>> m;                    // rational engine only
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
};

// Bareiss forward elimination; m becomes an upper echelon integer matrix
inline Echelon bareiss_forward(std::vector<std::vector<Int>> m, std::size_t cols) {
    Echelon e;
    std::size_t rows = m.size(), r = 0;
    Int prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && m[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(m[r], m[pr]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        e.pivots.emplace_back(r, c);
        ++r;
    }
    e.m = std::move(m);
    return e;
}

}  // namespace detail

inline std::size_t rank(const ExactMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if (m.field().rational())
        return detail::bareiss_forward(detail::clear_denominators(m), m.cols())
            .pivots.size();
    // F_p: ordinary elimination, same pivot rule
    ExactMatrix w = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < w.cols() && r < w.rows(); ++c) {
        std::size_t pr = r;
        while (pr < w.rows() && w.at(pr, c).is_zero()) ++pr;
        if (pr == w.rows()) continue;
        for (std::size_t j = 0; j < w.cols(); ++j) std::swap(w.at(r, j), w.at(pr, j));
        for (std::size_t i = r + 1; i < w.rows(); ++i) {
            if (w.at(i, c).is_zero()) continue;
            FieldElem f = w.at(i, c) / w.at(r, c);
            for (std::size_t j = c; j < w.cols(); ++j)
                w.at(i, j) -= f * w.at(r, j);
        }
        ++r;
    }
    return r;
}

// Reduced row echelon form; pivot column indices reported through `pivots`.
inline ExactMatrix rref(const ExactMatrix& m, std::vector<std::size_t>* pivots = nullptr) {
    const Field f = m.field();
    ExactMatrix r(m.rows(), m.cols(), f);
    std::vector<std::size_t> pcols;

    if (f.rational() && m.rows() > 0 && m.cols() > 0) {
        auto ech = detail::bareiss_forward(detail::clear_denominators(m), m.cols());
        std::size_t nr = ech.pivots.size();
        // copy echelon rows in as rationals, then back-substitute bottom-up
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t c = 0; c < m.cols(); ++c)
                r.at(i, c) = FieldElem::of(f, Rat(ech.m[i][c]));
        for (std::size_t ii = nr; ii-- > 0;) {
            std::size_t pc = ech.pivots[ii].second;
            for (std::size_t k = ii + 1; k < nr; ++k) {
                FieldElem factor = r.at(ii, ech.pivots[k].second);
                if (factor.is_zero()) continue;
                for (std::size_t c = ech.pivots[k].second; c < m.cols(); ++c)
                    r.at(ii, c) -= factor * r.at(k, c);
            }
            FieldElem inv = r.at(ii, pc).inv();
            for (std::size_t c = pc; c < m.cols(); ++c) r.at(ii, c) *= inv;
            pcols.push_back(pc);
        }
        std::reverse(pcols.begin(), pcols.end());
    } else if (m.rows() > 0 && m.cols() > 0) {
        ExactMatrix w = m;
        std::size_t rr = 0;
        for (std::size_t c = 0; c < w.cols() && rr < w.rows(); ++c) {
            std::size_t pr = rr;
            while (pr < w.rows() && w.at(pr, c).is_zero()) ++pr;
            if (pr == w.rows()) continue;
            for (std::size_t j = 0; j < w.cols(); ++j)
                std::swap(w.at(rr, j), w.at(pr, j));
            FieldElem inv = w.at(rr, c).inv();
            for (std::size_t j = c; j < w.cols(); ++j) w.at(rr, j) *= inv;
            for (std::size_t i = 0; i < w.rows(); ++i) {
                if (i == rr || w.at(i, c).is_zero()) continue;
                FieldElem factor = w.at(i, c);
                for (std::size_t j = c; j < w.cols(); ++j)
                    w.at(i, j) -= factor * w.at(rr, j);
            }
            pcols.push_back(c);
            ++rr;
        }
        // move pivot rows to the top in order (they already are, swaps kept order)
        r = w;
    }

    if (pivots) *pivots = pcols;
    return r;
}

namespace detail {

// in-place reduction of the columns of k to the canonical echelon basis
inline void column_echelon_canonicalize(ExactMatrix& k) {
    std::size_t lead = 0;
    for (std::size_t r = 0; r < k.rows() && lead < k.cols(); ++r) {
        std::size_t j = lead;
        while (j < k.cols() && k.at(r, j).is_zero()) ++j;
        if (j == k.cols()) continue;
        if (j != lead)
            for (std::size_t i = 0; i < k.rows(); ++i) std::swap(k.at(i, lead), k.at(i, j));
        FieldElem inv = k.at(r, lead).inv();
        for (std::size_t i = r; i < k.rows(); ++i) k.at(i, lead) *= inv;
        for (std::size_t j2 = 0; j2 < k.cols(); ++j2) {
            if (j2 == lead || k.at(r, j2).is_zero()) continue;
            FieldElem factor = k.at(r, j2);
            for (std::size_t i = r; i < k.rows(); ++i)
                k.at(i, j2) -= factor * k.at(i, lead);
        }
        ++lead;
    }
}

}  // namespace detail

// Basis of {v : m v = 0} in reduced column echelon form (see header comment).
inline ExactMatrix right_kernel(const ExactMatrix& m) {
    const Field f = m.field();
    std::vector<std::size_t> pcols;
    ExactMatrix r = rref(m, &pcols);

    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pcols) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    ExactMatrix k(m.cols(), free_cols.size(), f);
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        k.at(free_cols[j], j) = FieldElem::one(f);
        for (std::size_t i = 0; i < pcols.size(); ++i)
            k.at(pcols[i], j) = -r.at(i, free_cols[j]);
    }
    detail::column_echelon_canonicalize(k);
    return k;
}

// Basis of {v : v^T m = 0}, same normalization contract.
inline ExactMatrix left_kernel(const ExactMatrix& m) {
    return right_kernel(m.transpose());
}

}  // namespace fibratrix
