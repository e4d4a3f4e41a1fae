#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rauzy/errors.hpp"
#include "rauzy/induced.hpp"
#include "rauzy/rauzy.hpp"

namespace rauzy {

/// A certificate: replaying `kinds` from `base` ends at `end`, and the
/// ordered product of the elementary matrices along the walk is the target.
struct RealizationPath {
    Permutation base;
    std::vector<StepKind> kinds;
    Permutation end;
};

/// Depth-first factorization of nonnegative unimodular matrices into
/// elementary extended-Rauzy matrices, memoized on (pi, B).  Distinct
/// factorizations may reach distinct end permutations; one representative
/// path (first in R0 < R1 < L0 < L1 order) is kept per end.
class Peeler {
   public:
    using EndMap = std::map<Permutation, std::vector<StepKind>>;

    const EndMap& peel_all(const Permutation& pi, const IntMat& b) {
        std::string key = memo_key(pi, b);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        EndMap ends;
        if (b == IntMat::identity(b.rows())) {
            ends.emplace(pi, std::vector<StepKind>{});
        } else {
            for (const auto& kind : kAllKinds) {
                IntMat peeled = elementary_inverse(pi, kind) * b;
                if (!peeled.is_nonnegative()) continue;
                Permutation next = permutation_step(pi, kind);
                const EndMap& sub = peel_all(next, peeled);
                for (const auto& [end, tail] : sub) {
                    if (ends.count(end)) continue;
                    std::vector<StepKind> path{kind};
                    path.insert(path.end(), tail.begin(), tail.end());
                    ends.emplace(end, std::move(path));
                }
            }
        }
        return memo_.emplace(std::move(key), std::move(ends)).first->second;
    }

    /// True iff B is the product along some walk from `base` back to `base`.
    bool realizes_cycle(const Permutation& base, const IntMat& b) {
        return peel_all(base, b).count(base) > 0;
    }

   private:
    static std::string memo_key(const Permutation& pi, const IntMat& b) {
        std::string key;
        for (int v : pi.image()) key += std::to_string(v) + ",";
        key += "|";
        for (auto v : b.data()) key += std::to_string(v) + ",";
        return key;
    }

    const IntMat& elementary_inverse(const Permutation& pi, const StepKind& kind) {
        std::string key = memo_key(pi, IntMat(0, 0)) + kind.str();
        auto it = inv_cache_.find(key);
        if (it == inv_cache_.end())
            it = inv_cache_.emplace(key, unimodular_inverse(elementary_matrix(pi, kind))).first;
        return it->second;
    }

    std::unordered_map<std::string, EndMap> memo_;
    std::unordered_map<std::string, IntMat> inv_cache_;
};

inline void validate_product(const IntMat& b, int n, const std::string& what) {
    if (b.rows() != n || b.cols() != n) throw Error(what + ": dimension mismatch");
    if (!b.is_nonnegative()) throw InvalidProduct(what + ": negative entry");
    if (!is_unimodular(b)) throw InvalidProduct(what + ": determinant is not +-1");
}

/// Factor B into extended Rauzy steps starting at pi; nullopt when no
/// factorization exists.  The reported end is the least surviving
/// permutation (deterministic).
inline std::optional<RealizationPath> peel_decompose(const IntMat& b, const Permutation& pi,
                                                     Peeler* peeler = nullptr) {
    if (!pi.is_irreducible()) throw Error("peel_decompose: reducible permutation");
    validate_product(b, pi.n(), "peel_decompose");
    Peeler local;
    Peeler& p = peeler ? *peeler : local;
    const auto& ends = p.peel_all(pi, b);
    if (ends.empty()) return std::nullopt;
    const auto& [end, kinds] = *ends.begin();
    return RealizationPath{pi, kinds, end};
}

enum class RecoveryMode { Weak, Strict };

struct CandidateReport {
    Permutation pi;                          // initial permutation candidate
    std::vector<Permutation> chain;          // permutation after each B_k
    std::vector<std::vector<StepKind>> paths;  // strict mode: certificate per B_k
};

struct RecoveryReport {
    int n = 0;
    RecoveryMode mode = RecoveryMode::Weak;
    std::vector<CandidateReport> candidates;  // sorted lexicographically by pi
};

/// Candidates pi whose L-form chain M_k = B_k^T M_{k-1} B_k stays inside the
/// L_pi family of irreducible permutations at every k.
inline RecoveryReport recover_weak(const std::vector<IntMat>& bs, int n) {
    RecoveryReport report;
    report.n = n;
    report.mode = RecoveryMode::Weak;
    for (const auto& b : bs)
        if (b.rows() != n || b.cols() != n) throw Error("recover_weak: dimension mismatch");
    for (const auto& pi : irreducible_permutations(n)) {
        IntMat m = l_matrix(pi);
        std::vector<Permutation> chain;
        bool ok = true;
        for (const auto& b : bs) {
            m = b.transpose() * m * b;
            auto cand = permutation_from_l(m);
            if (!cand || !cand->is_irreducible()) {
                ok = false;
                break;
            }
            chain.push_back(*cand);
        }
        if (ok) report.candidates.push_back({pi, std::move(chain), {}});
    }
    return report;
}

/// Candidates pi for which every B_k factors into extended Rauzy steps,
/// chaining end permutations across the B_k boundaries (all factorization
/// ends are explored).  Genuine induction data with a positive window
/// yields exactly one candidate.
inline RecoveryReport recover_strict(const std::vector<IntMat>& bs, int n) {
    RecoveryReport report;
    report.n = n;
    report.mode = RecoveryMode::Strict;
    for (size_t k = 0; k < bs.size(); ++k)
        validate_product(bs[k], n, "recover_strict: B_" + std::to_string(k + 1));

    struct Branch {
        std::vector<Permutation> chain;
        std::vector<std::vector<StepKind>> paths;
    };
    Peeler peeler;
    for (const auto& pi : irreducible_permutations(n)) {
        std::map<Permutation, Branch> frontier;
        frontier.emplace(pi, Branch{});
        for (const auto& b : bs) {
            std::map<Permutation, Branch> next;
            for (const auto& [perm, branch] : frontier) {
                for (const auto& [end, kinds] : peeler.peel_all(perm, b)) {
                    if (next.count(end)) continue;
                    Branch nb = branch;
                    nb.chain.push_back(end);
                    nb.paths.push_back(kinds);
                    next.emplace(end, std::move(nb));
                }
            }
            frontier = std::move(next);
            if (frontier.empty()) break;
        }
        if (!frontier.empty()) {
            const auto& [end, branch] = *frontier.begin();
            report.candidates.push_back({pi, branch.chain, branch.paths});
        }
    }
    return report;
}

/// Realize an admissible sub-interval as a path of extended
/// Rauzy steps.  Returns nullopt iff J is not admissible (the loop stalls at
/// strict containment with both endpoint inequalities satisfied).
inline std::optional<RealizationPath> realize_interval(const IET& t, const SubInterval& j,
                                                       int step_cap = default_step_cap()) {
    if (j.a < t.left() || j.b > t.right() || !(j.a < j.b))
        throw DomainError("realize_interval: bad sub-interval");
    IET cur = t;
    std::vector<StepKind> kinds;
    for (int iter = 0; iter < step_cap; ++iter) {
        if (cur.left() == j.a && cur.right() == j.b)
            return RealizationPath{t.pi, kinds, cur.pi};
        int n = cur.n();
        int i0 = cur.pi.pi_inv(1);
        int i1 = cur.pi.pi_inv(n);
        Scalar left_margin = std::min(cur.lambda[0], cur.lambda[i0 - 1]);
        Scalar right_margin = std::min(cur.lambda[i1 - 1], cur.lambda[n - 1]);
        bool left_ok = j.a < cur.left() + left_margin;
        bool right_ok = cur.right() - right_margin < j.b;
        if (left_ok && right_ok) return std::nullopt;  // strict containment: not admissible
        auto [step, nxt] = apply_step(cur, left_ok ? Side::Right : Side::Left);
        kinds.push_back(step.kind);
        cur = nxt;
    }
    throw ReturnOverflow("realize_interval: step cap exceeded");
}

}  // namespace rauzy
