#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "rauzy/errors.hpp"
#include "rauzy/iet.hpp"

namespace rauzy {

enum class Side { Right, Left };

/// One of the four extended Rauzy moves.  Fixed order R0 < R1 < L0 < L1 is
/// relied on by the peeling search.
struct StepKind {
    Side side;
    int type;  // 0 or 1

    friend bool operator==(const StepKind& a, const StepKind& b) {
        return a.side == b.side && a.type == b.type;
    }
    friend bool operator<(const StepKind& a, const StepKind& b) {
        if (a.side != b.side) return a.side == Side::Right;
        return a.type < b.type;
    }
    std::string str() const {
        return std::string(side == Side::Right ? "R" : "L") + std::to_string(type);
    }
};

inline const StepKind kRight0{Side::Right, 0};
inline const StepKind kRight1{Side::Right, 1};
inline const StepKind kLeft0{Side::Left, 0};
inline const StepKind kLeft1{Side::Left, 1};
inline const StepKind kAllKinds[4] = {kRight0, kRight1, kLeft0, kLeft1};

inline std::optional<StepKind> step_kind_from_string(const std::string& s) {
    for (const auto& k : kAllKinds)
        if (k.str() == s) return k;
    return std::nullopt;
}

namespace detail {

inline Permutation right_step_perm(const Permutation& p, int type) {
    int n = p.n();
    int m = p.pi_inv(n);
    std::vector<int> img(n);
    if (type == 0) {
        int pn = p.pi(n);
        for (int i = 1; i <= n; ++i) {
            if (i == n) img[i - 1] = pn;  // the uncovered pi(i) == pi(n) case
            else if (p.pi(i) < pn) img[i - 1] = p.pi(i);
            else if (p.pi(i) == n) img[i - 1] = pn + 1;
            else img[i - 1] = p.pi(i) + 1;
        }
    } else {
        for (int i = 1; i <= n; ++i) {
            if (i <= m) img[i - 1] = p.pi(i);
            else if (i == m + 1) img[i - 1] = p.pi(n);
            else img[i - 1] = p.pi(i - 1);
        }
    }
    return Permutation(img);
}

inline IntMat right_step_matrix(const Permutation& p, int type) {
    int n = p.n();
    int m = p.pi_inv(n);
    IntMat a(n, n);
    if (type == 0) {
        a = IntMat::identity(n);
        a(n - 1, m - 1) += 1;
    } else {
        // Forced by the transport identity lambda = A lambda' with
        // lambda' = (l_1,...,l_{m-1}, l_m - l_n, l_n, l_{m+1},...,l_{n-1}).
        for (int i = 1; i <= n; ++i) {
            if (i <= m) a(i - 1, i - 1) = 1;
            if (i >= m && i < n) a(i - 1, i) = 1;
        }
        a(n - 1, m) = 1;
    }
    return a;
}

}  // namespace detail

/// pi' for a single extended Rauzy move.  Left moves go through tau-duality:
/// (left e on pi) = (right e on pi_tau)_tau.
inline Permutation permutation_step(const Permutation& p, const StepKind& kind) {
    if (!p.is_irreducible()) throw Error("permutation_step: reducible permutation");
    if (kind.side == Side::Right) return detail::right_step_perm(p, kind.type);
    return detail::right_step_perm(p.tau_dual(), kind.type).tau_dual();
}

/// Visitation matrix of a single move; depends only on (pi, kind).
inline IntMat elementary_matrix(const Permutation& p, const StepKind& kind) {
    if (!p.is_irreducible()) throw Error("elementary_matrix: reducible permutation");
    if (kind.side == Side::Right) return detail::right_step_matrix(p, kind.type);
    IntMat pn = IntMat::reversal(p.n());
    return pn * detail::right_step_matrix(p.tau_dual(), kind.type) * pn;
}

struct InductionStep {
    StepKind kind;
    Permutation pre_perm, post_perm;
    IntMat matrix;  // elementary visitation matrix A
};

namespace detail {

inline void check_step(const InductionStep& s, const std::vector<Scalar>& lam_pre,
                       const std::vector<Scalar>& lam_post) {
    auto transported = s.matrix.apply(lam_post);
    for (size_t i = 0; i < lam_pre.size(); ++i)
        if (transported[i] != lam_pre[i])
            throw ContractViolation("step does not satisfy lambda = A lambda'");
    IntMat lhs = s.matrix.transpose() * l_matrix(s.pre_perm) * s.matrix;
    if (lhs != l_matrix(s.post_perm))
        throw ContractViolation("step does not satisfy A^T L A = L'");
}

}  // namespace detail

/// Right Rauzy induction: cut min(lambda_m, lambda_n) from the right,
/// m = pi^{-1}(n).  Type 0 iff lambda_n > lambda_m.
inline std::pair<InductionStep, IET> step_right(const IET& t) {
    int n = t.n();
    int m = t.pi.pi_inv(n);
    const Scalar& ln = t.lambda[n - 1];
    const Scalar& lm = t.lambda[m - 1];
    if (ln == lm) throw TieError("lambda_n == lambda_{pi^-1(n)}: Rauzy induction undefined");
    int type = (ln > lm) ? 0 : 1;
    std::vector<Scalar> lam;
    if (type == 0) {
        lam = t.lambda;
        lam[n - 1] = ln - lm;
    } else {
        lam.reserve(n);
        for (int i = 1; i < m; ++i) lam.push_back(t.lambda[i - 1]);
        lam.push_back(lm - ln);
        lam.push_back(ln);
        for (int i = m + 2; i <= n; ++i) lam.push_back(t.lambda[i - 2]);
    }
    InductionStep step{StepKind{Side::Right, type}, t.pi,
                       detail::right_step_perm(t.pi, type),
                       detail::right_step_matrix(t.pi, type)};
    detail::check_step(step, t.lambda, lam);
    return {step, make_iet(step.post_perm, lam, t.origin)};
}

/// Left Rauzy induction: cut min(lambda_1, lambda_{m'}) from the left,
/// m' = pi^{-1}(1); the successor keeps its true left endpoint, so its
/// origin advances by the cut length.  Type 0~ iff lambda_1 > lambda_{m'}.
inline std::pair<InductionStep, IET> step_left(const IET& t) {
    int n = t.n();
    int mp = t.pi.pi_inv(1);
    const Scalar& l1 = t.lambda[0];
    const Scalar& lmp = t.lambda[mp - 1];
    if (l1 == lmp) throw TieError("lambda_1 == lambda_{pi^-1(1)}: left induction undefined");
    int type = (l1 > lmp) ? 0 : 1;
    std::vector<Scalar> lam(n, Scalar(0));
    if (type == 0) {
        lam = t.lambda;
        lam[0] = l1 - lmp;
    } else {
        for (int i = 1; i < mp - 1; ++i) lam[i - 1] = t.lambda[i];
        lam[mp - 2] = l1;
        lam[mp - 1] = lmp - l1;
        for (int i = mp + 1; i <= n; ++i) lam[i - 1] = t.lambda[i - 1];
    }
    StepKind kind{Side::Left, type};
    InductionStep step{kind, t.pi, permutation_step(t.pi, kind),
                       elementary_matrix(t.pi, kind)};
    detail::check_step(step, t.lambda, lam);
    Scalar cut = (l1 < lmp) ? l1 : lmp;
    return {step, make_iet(step.post_perm, lam, t.origin + cut)};
}

inline std::pair<InductionStep, IET> apply_step(const IET& t, Side side) {
    return side == Side::Right ? step_right(t) : step_left(t);
}

struct InductionTrace {
    IET initial;
    std::vector<InductionStep> steps;
    std::vector<IET> states;  // state after each step

    int size() const { return (int)steps.size(); }
    /// Product A_{j}...A_{k}, 1-based inclusive window.
    IntMat product(int j, int k) const {
        if (j < 1 || k > size() || j > k) throw Error("trace: bad window");
        IntMat b = steps[j - 1].matrix;
        for (int i = j; i < k; ++i) b = b * steps[i].matrix;
        return b;
    }
    IntMat full_product() const { return product(1, size()); }
};

enum class DrivePolicy { AlwaysRight, AlwaysLeft, Alternate };

inline int default_step_cap() {
    if (const char* env = std::getenv("RAUZY_LAB_STEP_CAP")) {
        long v = std::atol(env);
        if (v > 0) return (int)v;
    }
    return 10000;
}

inline InductionTrace drive(const IET& t, const std::vector<Side>& sides,
                            int step_cap = default_step_cap()) {
    if (sides.empty()) throw Error("drive: need at least one step");
    if ((int)sides.size() > step_cap) throw Error("drive: step cap exceeded");
    InductionTrace trace;
    trace.initial = t;
    IET cur = t;
    for (size_t k = 0; k < sides.size(); ++k) {
        try {
            auto [step, nxt] = apply_step(cur, sides[k]);
            trace.steps.push_back(step);
            trace.states.push_back(nxt);
            cur = nxt;
        } catch (const TieError& e) {
            throw TieError(e.what(), (int)k + 1);
        }
    }
    // The full product must transport lambda^{(N)} back to lambda exactly.
    auto back = trace.full_product().apply(cur.lambda);
    for (int i = 0; i < t.n(); ++i)
        if (back[i] != t.lambda[i]) throw ContractViolation("drive: lambda != B lambda^(N)");
    return trace;
}

inline std::vector<Side> policy_sides(DrivePolicy policy, int n_steps) {
    std::vector<Side> sides(n_steps);
    for (int k = 0; k < n_steps; ++k) {
        switch (policy) {
            case DrivePolicy::AlwaysRight: sides[k] = Side::Right; break;
            case DrivePolicy::AlwaysLeft: sides[k] = Side::Left; break;
            case DrivePolicy::Alternate: sides[k] = (k % 2 == 0) ? Side::Right : Side::Left; break;
        }
    }
    return sides;
}

inline InductionTrace drive(const IET& t, DrivePolicy policy, int n_steps,
                            int step_cap = default_step_cap()) {
    return drive(t, policy_sides(policy, n_steps), step_cap);
}

struct GroupedProducts {
    std::vector<int> cuts;       // k_1 < k_2 < ... (k_0 = 0 implicit)
    std::vector<IntMat> products;  // B_l = A_{k_{l-1}+1} ... A_{k_l}
};

inline GroupedProducts group_products(const InductionTrace& trace,
                                      const std::vector<int>& cuts) {
    GroupedProducts g;
    int prev = 0;
    for (int k : cuts) {
        if (k <= prev || k > trace.size()) throw Error("group_products: bad cut sequence");
        g.products.push_back(trace.product(prev + 1, k));
        g.cuts.push_back(k);
        prev = k;
    }
    return g;
}

/// Least k >= j with A_j ... A_k entrywise positive; nullopt if the trace is
/// exhausted first.
inline std::optional<int> first_positive_window(const InductionTrace& trace, int j) {
    if (j < 1 || j > trace.size()) throw Error("first_positive_window: bad start index");
    IntMat b = trace.steps[j - 1].matrix;
    for (int k = j; k <= trace.size(); ++k) {
        if (k > j) b = b * trace.steps[k - 1].matrix;
        if (b.is_positive()) return k;
    }
    return std::nullopt;
}

}  // namespace rauzy
