#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <utility>

#include "rauzy/errors.hpp"

namespace rauzy {

using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw Error("cannot parse rational: " + s);
    q.canonicalize();
    if (q.get_den() <= 0) throw Error("non-positive denominator: " + s);
    return q;
}

// Canonical "p/q" form, denominator always printed.
inline std::string rational_to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Element of Q or of a real quadratic field Q(sqrt(D)): value a + b*sqrt(D).
/// D == 0 encodes a plain rational (then b == 0).  D must be a positive
/// non-square integer otherwise; arithmetic never mixes distinct D's.
class Scalar {
   public:
    Scalar() : a_(0), b_(0), d_(0) {}
    Scalar(int v) : a_(v), b_(0), d_(0) {}          // NOLINT(runtime/explicit)
    Scalar(const Rational& v) : a_(v), b_(0), d_(0) { a_.canonicalize(); }  // NOLINT
    Scalar(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
        if (d_ < 0) throw ContextError("negative discriminant");
        if (d_ == 0 && b_ != 0) throw ContextError("sqrt part without discriminant");
        normalize();
    }

    static Scalar sqrt_of(long d) { return Scalar(Rational(0), Rational(1), d); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    long d() const { return d_; }
    bool is_rational() const { return d_ == 0; }

    /// Exact sign in the real embedding with sqrt(D) > 0.
    int sign() const {
        if (d_ == 0) return sgn(a_);
        int sa = sgn(a_), sb = sgn(b_);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // Signs disagree: compare a^2 against b^2 * D.
        Rational lhs = a_ * a_, rhs = b_ * b_ * d_;
        int c = cmp(lhs, rhs);
        if (c == 0) throw ContractViolation("a^2 == b^2 D with non-square D");
        return c > 0 ? sa : sb;
    }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_positive() const { return sign() > 0; }

    Scalar operator-() const { return Scalar(-a_, -b_, d_); }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        long d = join(x, y);
        return Scalar(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) {
        long d = join(x, y);
        return Scalar(x.a_ - y.a_, x.b_ - y.b_, d);
    }
    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        long d = join(x, y);
        return Scalar(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    friend Scalar operator/(const Scalar& x, const Scalar& y) {
        long d = join(x, y);
        if (y.is_zero()) throw Error("division by zero");
        // Multiply by the conjugate of y; the norm a^2 - b^2 D is rational.
        Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * d;
        if (norm == 0) throw ContractViolation("zero field norm for nonzero scalar");
        return Scalar((x.a_ * y.a_ - x.b_ * y.b_ * d) / norm,
                      (x.b_ * y.a_ - x.a_ * y.b_) / norm, d);
    }

    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
    Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        if (x.d_ != 0 && y.d_ != 0 && x.d_ != y.d_)
            throw ContextError("comparing scalars from different quadratic fields");
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
    friend bool operator<(const Scalar& x, const Scalar& y) { return (x - y).sign() < 0; }
    friend bool operator>(const Scalar& x, const Scalar& y) { return (x - y).sign() > 0; }
    friend bool operator<=(const Scalar& x, const Scalar& y) { return (x - y).sign() <= 0; }
    friend bool operator>=(const Scalar& x, const Scalar& y) { return (x - y).sign() >= 0; }

    double to_double() const {
        double v = a_.get_d();
        if (d_ != 0) v += b_.get_d() * std::sqrt(static_cast<double>(d_));
        return v;
    }

    bool is_integer() const { return d_ == 0 && a_.get_den() == 1; }

    std::string str() const {
        if (d_ == 0) return rational_to_string(a_);
        return rational_to_string(a_) + " + " + rational_to_string(b_) + "*sqrt(" +
               std::to_string(d_) + ")";
    }

   private:
    void normalize() {
        // mpq_class construction does not canonicalize, and GMP arithmetic
        // on non-canonical rationals is undefined.
        a_.canonicalize();
        b_.canonicalize();
        if (b_ == 0) d_ = 0;  // demote to plain rational
    }

    static long join(const Scalar& x, const Scalar& y) {
        if (x.d_ == 0) return y.d_;
        if (y.d_ == 0) return x.d_;
        if (x.d_ != y.d_) throw ContextError("mixed quadratic discriminants");
        return x.d_;
    }

    Rational a_, b_;
    long d_;
};

enum class Ordering { Less, Equal, Greater };

inline Ordering scalar_cmp(const Scalar& x, const Scalar& y) {
    int s = (x - y).sign();
    return s < 0 ? Ordering::Less : (s > 0 ? Ordering::Greater : Ordering::Equal);
}

}  // namespace rauzy
