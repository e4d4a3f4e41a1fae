#pragma once

#include <vector>

#include "rauzy/errors.hpp"
#include "rauzy/matrix.hpp"
#include "rauzy/permutation.hpp"
#include "rauzy/scalar.hpp"

namespace rauzy {

/// Interval exchange transformation on [origin, origin + |lambda|).
/// beta_j are the partial sums of lambda (relative to origin) and
/// omega = L_pi * lambda, so T(x) = x + omega_j on I_j.
struct IET {
    Permutation pi;
    std::vector<Scalar> lambda;
    std::vector<Scalar> beta;   // beta_0 = 0, ..., beta_n = |lambda|
    std::vector<Scalar> omega;  // translation of interval j (1-based: omega[j-1])
    Scalar origin;

    int n() const { return pi.n(); }
    Scalar total() const { return beta.back(); }
    Scalar left() const { return origin; }
    Scalar right() const { return origin + beta.back(); }
};

inline IET make_iet(const Permutation& pi, const std::vector<Scalar>& lambda,
                    Scalar origin = Scalar(0)) {
    if (!pi.is_irreducible()) throw Error("make_iet: reducible permutation");
    if ((int)lambda.size() != pi.n()) throw Error("make_iet: lambda size mismatch");
    for (const auto& l : lambda)
        if (!l.is_positive()) throw Error("make_iet: non-positive length");
    IET t;
    t.pi = pi;
    t.lambda = lambda;
    t.origin = origin;
    t.beta.assign(1, Scalar(0));
    for (const auto& l : lambda) t.beta.push_back(t.beta.back() + l);
    t.omega = l_matrix(pi).apply(lambda);
    // omega_j = sum_{pi(i) < pi(j)} lambda_i - sum_{k < j} lambda_k must agree
    // with L_pi * lambda.
    for (int j = 1; j <= pi.n(); ++j) {
        Scalar direct(0);
        for (int i = 1; i <= pi.n(); ++i)
            if (pi.pi(i) < pi.pi(j)) direct += lambda[i - 1];
        direct -= t.beta[j - 1];
        if (direct != t.omega[j - 1]) throw ContractViolation("omega != L_pi lambda");
    }
    return t;
}

/// Index j (1-based) of the interval I_j containing x.
inline int interval_index(const IET& t, const Scalar& x) {
    Scalar rel = x - t.origin;
    if (rel.sign() < 0 || rel >= t.total()) throw DomainError("point outside IET domain");
    for (int j = 1; j <= t.n(); ++j)
        if (rel < t.beta[j]) return j;
    throw ContractViolation("interval_index: breakpoint scan failed");
}

inline Scalar evaluate(const IET& t, const Scalar& x) {
    return x + t.omega[interval_index(t, x) - 1];
}

/// T^{-1}(y); accepts y == right endpoint with the closure convention
/// T^{-1}(|lambda|) = beta_{pi^{-1}(n)}, the right endpoint of the interval
/// placed last.
inline Scalar evaluate_inverse(const IET& t, const Scalar& y) {
    Scalar rel = y - t.origin;
    if (rel.sign() < 0 || rel > t.total()) throw DomainError("point outside IET range");
    if (rel == t.total()) return t.origin + t.beta[t.pi.pi_inv(t.n())];
    // Image of I_j is [beta_{j-1} + omega_j, beta_j + omega_j).
    for (int j = 1; j <= t.n(); ++j) {
        Scalar lo = t.beta[j - 1] + t.omega[j - 1];
        Scalar hi = t.beta[j] + t.omega[j - 1];
        if (rel >= lo && rel < hi) return y - t.omega[j - 1];
    }
    throw ContractViolation("evaluate_inverse: image scan failed");
}

}  // namespace rauzy
