#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "rauzy/errors.hpp"
#include "rauzy/scalar.hpp"

namespace rauzy {

/// Dense integer matrix.  Carrier for L_pi, elementary step matrices and
/// their products.  Multiplication accumulates in 128 bits and range-checks
/// the result, so silent overflow cannot corrupt a recovery run.
class IntMat {
   public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols, 0) {}
    IntMat(int rows, int cols, std::initializer_list<std::int64_t> vals)
        : rows_(rows), cols_(cols), e_(vals) {
        if (e_.size() != size_t(rows) * cols) throw Error("IntMat: bad initializer size");
    }

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// Reversal matrix P_n: (P)_{ij} = 1 iff i + j == n + 1 (1-based).
    static IntMat reversal(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, n - 1 - i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::int64_t& operator()(int i, int j) { return e_[size_t(i) * cols_ + j]; }
    std::int64_t operator()(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

    const std::vector<std::int64_t>& data() const { return e_; }

    friend bool operator==(const IntMat& x, const IntMat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.e_ == y.e_;
    }
    friend bool operator!=(const IntMat& x, const IntMat& y) { return !(x == y); }

    friend IntMat operator*(const IntMat& x, const IntMat& y) {
        if (x.cols_ != y.rows_) throw Error("IntMat: dimension mismatch in product");
        IntMat r(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                std::int64_t xv = x(i, k);
                if (xv == 0) continue;
                for (int j = 0; j < y.cols_; ++j) {
                    __int128 acc = (__int128)r(i, j) + (__int128)xv * y(k, j);
                    if (acc > INT64_MAX || acc < INT64_MIN)
                        throw Error("IntMat: entry overflow in product");
                    r(i, j) = (std::int64_t)acc;
                }
            }
        return r;
    }

    friend IntMat operator-(const IntMat& x, const IntMat& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw Error("IntMat: dimension mismatch");
        IntMat r(x.rows_, x.cols_);
        for (size_t i = 0; i < x.e_.size(); ++i) r.e_[i] = x.e_[i] - y.e_[i];
        return r;
    }

    IntMat transpose() const {
        IntMat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    bool is_nonnegative() const {
        for (auto v : e_)
            if (v < 0) return false;
        return true;
    }
    bool is_positive() const {
        for (auto v : e_)
            if (v <= 0) return false;
        return true;
    }
    bool is_antisymmetric() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j <= i; ++j)
                if ((*this)(i, j) != -(*this)(j, i)) return false;
        return true;
    }
    bool is_zero() const {
        for (auto v : e_)
            if (v != 0) return false;
        return true;
    }

    std::vector<std::int64_t> apply(const std::vector<std::int64_t>& v) const {
        if ((int)v.size() != cols_) throw Error("IntMat: vector dimension mismatch");
        std::vector<std::int64_t> r(rows_, 0);
        for (int i = 0; i < rows_; ++i) {
            __int128 acc = 0;
            for (int j = 0; j < cols_; ++j) acc += (__int128)(*this)(i, j) * v[j];
            if (acc > INT64_MAX || acc < INT64_MIN) throw Error("IntMat: overflow");
            r[i] = (std::int64_t)acc;
        }
        return r;
    }

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
        if ((int)v.size() != cols_) throw Error("IntMat: vector dimension mismatch");
        std::vector<Scalar> r(rows_, Scalar(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0)
                    r[i] += Scalar(Rational((long)(*this)(i, j))) * v[j];
        return r;
    }

   private:
    int rows_, cols_;
    std::vector<std::int64_t> e_;
};

using RatVec = std::vector<Rational>;

/// Dense exact rational matrix; used for nullspaces, ranks and inverses.
class RatMat {
   public:
    RatMat(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols) {}
    explicit RatMat(const IntMat& m) : RatMat(m.rows(), m.cols()) {
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) (*this)(i, j) = Rational((long)m(i, j));
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& operator()(int i, int j) { return e_[size_t(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

    /// Row-reduce in place; returns the pivot columns.
    std::vector<int> reduce() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int p = -1;
            for (int i = r; i < rows_; ++i)
                if ((*this)(i, c) != 0) { p = i; break; }
            if (p < 0) continue;
            if (p != r)
                for (int j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
            Rational inv = (*this)(r, c);
            for (int j = 0; j < cols_; ++j) (*this)(r, j) /= inv;
            for (int i = 0; i < rows_; ++i) {
                if (i == r || (*this)(i, c) == 0) continue;
                Rational f = (*this)(i, c);
                for (int j = 0; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

   private:
    int rows_, cols_;
    std::vector<Rational> e_;
};

inline int rank(const IntMat& m) {
    RatMat r(m);
    return (int)r.reduce().size();
}

/// Exact basis of {v : Mv = 0}.  Empty iff M is injective.
inline std::vector<RatVec> nullspace(const IntMat& m) {
    RatMat r(m);
    std::vector<int> pivots = r.reduce();
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        RatVec v(m.cols(), Rational(0));
        v[c] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r((int)i, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::int64_t rational_to_int64(const Rational& q) {
    if (q.get_den() != 1) throw NotUnimodular("non-integer entry in inverse");
    mpz_class n = q.get_num();
    if (!n.fits_slong_p()) throw Error("entry overflow");
    return n.get_si();
}

/// Exact inverse of a matrix with determinant +-1.
inline IntMat unimodular_inverse(const IntMat& m) {
    if (m.rows() != m.cols()) throw NotUnimodular("non-square matrix");
    int n = m.rows();
    // Gauss-Jordan over exact rationals on [m | I], tracking the determinant.
    RatMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = Rational((long)m(i, j));
        aug(i, n + i) = 1;
    }
    Rational det = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (aug(i, c) != 0) { p = i; break; }
        if (p < 0) throw NotUnimodular("singular matrix");
        if (p != c) {
            for (int j = 0; j < 2 * n; ++j) std::swap(aug(p, j), aug(c, j));
            det = -det;
        }
        det *= aug(c, c);
        Rational inv = aug(c, c);
        for (int j = 0; j < 2 * n; ++j) aug(c, j) /= inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || aug(i, c) == 0) continue;
            Rational f = aug(i, c);
            for (int j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(c, j);
        }
    }
    if (det != 1 && det != -1) throw NotUnimodular("determinant is not +-1");
    IntMat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = rational_to_int64(aug(i, n + j));
    return inv;
}

inline bool is_unimodular(const IntMat& m) {
    try {
        unimodular_inverse(m);
        return true;
    } catch (const NotUnimodular&) {
        return false;
    }
}

/// u^T L v for anti-symmetric L, over exact scalars.
inline Scalar bilinear(const std::vector<Scalar>& u, const IntMat& l,
                       const std::vector<Scalar>& v) {
    if (!l.is_antisymmetric()) throw ContractViolation("bilinear: L not anti-symmetric");
    if ((int)u.size() != l.rows() || (int)v.size() != l.cols())
        throw Error("bilinear: dimension mismatch");
    Scalar acc(0);
    for (int i = 0; i < l.rows(); ++i)
        for (int j = 0; j < l.cols(); ++j)
            if (l(i, j) != 0) acc += u[i] * Scalar(Rational((long)l(i, j))) * v[j];
    return acc;
}

}  // namespace rauzy
