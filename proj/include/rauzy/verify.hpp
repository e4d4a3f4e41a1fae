#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "rauzy/errors.hpp"
#include "rauzy/recover.hpp"

namespace rauzy {

// ---------------------------------------------------------------------------
// Cycle enumeration over the extended Rauzy graph
// ---------------------------------------------------------------------------

enum class SideSet { RightOnly, Extended };

struct CycleEnumeration {
    Permutation base;
    int max_len = 0;
    std::vector<std::vector<StepKind>> cycles;  // each replays to the base
};

inline CycleEnumeration enumerate_cycles(const Permutation& base, int max_len, SideSet sides,
                                         int max_len_bound = 16) {
    if (!base.is_irreducible()) throw Error("enumerate_cycles: reducible permutation");
    if (max_len < 0 || max_len > max_len_bound) throw Error("enumerate_cycles: bad max_len");
    CycleEnumeration out;
    out.base = base;
    out.max_len = max_len;
    int n_kinds = sides == SideSet::RightOnly ? 2 : 4;
    // Recursive enumeration; branching factor <= 4, depth <= max_len.
    std::vector<StepKind> path;
    auto rec = [&](auto&& self, const Permutation& cur) -> void {
        if ((int)path.size() >= max_len) return;
        for (int c = 0; c < n_kinds; ++c) {
            StepKind kind = kAllKinds[c];
            Permutation next = permutation_step(cur, kind);
            path.push_back(kind);
            if (next == base) out.cycles.push_back(path);
            self(self, next);
            path.pop_back();
        }
    };
    rec(rec, base);
    return out;
}

inline IntMat path_product(const Permutation& base, const std::vector<StepKind>& kinds) {
    IntMat b = IntMat::identity(base.n());
    Permutation cur = base;
    for (const auto& kind : kinds) {
        b = b * elementary_matrix(cur, kind);
        cur = permutation_step(cur, kind);
    }
    return b;
}

inline Permutation path_end(const Permutation& base, const std::vector<StepKind>& kinds) {
    Permutation cur = base;
    for (const auto& kind : kinds) cur = permutation_step(cur, kind);
    return cur;
}

// ---------------------------------------------------------------------------
// Exact nullspace action of cycle products (Veech b-vectors)
// ---------------------------------------------------------------------------

struct CycleBAction {
    IntMat product;
    std::vector<int> block_image;  // signed bijection d on Sigma(pi) blocks
    std::vector<int> block_sign;   // B b_S = sign * b_{dS}
    long period = 1;               // least exhibited p with B^p b_S = b_S
};

/// Match B b_S against the signed b-vectors of Sigma(pi), derive the block
/// bijection and a period p, and verify B^p b_S = b_S exactly for every S.
inline CycleBAction cycle_b_action(const Permutation& base, const std::vector<StepKind>& kinds) {
    if (path_end(base, kinds) != base) throw Error("cycle_b_action: path is not a cycle");
    int n = base.n();
    IntMat b = path_product(base, kinds);
    SigmaPartition part = sigma_partition(base);
    int nb = (int)part.blocks.size();
    std::vector<std::vector<std::int64_t>> bvecs;
    for (const auto& block : part.blocks) bvecs.push_back(b_vector(block, n));

    CycleBAction act;
    act.product = b;
    act.block_image.assign(nb, -1);
    act.block_sign.assign(nb, 0);
    std::vector<bool> used(nb, false);
    for (int s = 0; s < nb; ++s) {
        auto img = b.apply(bvecs[s]);
        for (int t = 0; t < nb && act.block_image[s] < 0; ++t) {
            if (used[t]) continue;
            bool plus = true, minus = true;
            for (int i = 0; i < n; ++i) {
                plus = plus && img[i] == bvecs[t][i];
                minus = minus && img[i] == -bvecs[t][i];
            }
            bool zero_target =
                std::all_of(bvecs[t].begin(), bvecs[t].end(), [](auto v) { return v == 0; });
            if (plus || (minus && !zero_target)) {
                act.block_image[s] = t;
                act.block_sign[s] = plus ? 1 : -1;
                used[t] = true;
            }
        }
        if (act.block_image[s] < 0)
            throw ContractViolation("cycle_b_action: B b_S is not a signed b-vector");
    }

    // p = lcm of cycle lengths of d, doubled on cycles whose sign product flips.
    std::vector<bool> seen(nb, false);
    long p = 1;
    for (int s = 0; s < nb; ++s) {
        if (seen[s]) continue;
        int len = 0, sign = 1, cur = s;
        do {
            seen[cur] = true;
            sign *= act.block_sign[cur];
            cur = act.block_image[cur];
            ++len;
        } while (cur != s);
        long cyc = (sign == 1) ? len : 2L * len;
        p = std::lcm(p, cyc);
    }
    act.period = p;

    for (int s = 0; s < nb; ++s) {
        auto v = bvecs[s];
        for (long k = 0; k < p; ++k) v = b.apply(v);
        if (v != bvecs[s]) throw ContractViolation("cycle_b_action: B^p b_S != b_S");
    }
    return act;
}

// ---------------------------------------------------------------------------
// Sign-definite rows and positive-vector exclusion (exact)
// ---------------------------------------------------------------------------

struct SignDefiniteRow {
    int row;   // 1-based
    int sign;  // +1: non-negative, -1: non-positive
};

/// Constructive row of L_pi - c L_pi' that is non-zero and sign-definite,
/// by the case analysis on c; the chosen row is re-verified exactly.
inline SignDefiniteRow sign_definite_row(const Permutation& pi, const Permutation& pi2,
                                         const Rational& c) {
    if (pi == pi2) throw Error("sign_definite_row: permutations must be distinct");
    if (!pi.is_irreducible() || !pi2.is_irreducible())
        throw Error("sign_definite_row: permutations must be irreducible");
    int n = pi.n();
    if (pi2.n() != n) throw Error("sign_definite_row: size mismatch");

    Rational cc = c;
    cc.canonicalize();  // guard against non-canonical caller input
    SignDefiniteRow out{0, +1};
    if (cc > 1) {
        SignDefiniteRow flipped = sign_definite_row(pi2, pi, Rational(1) / cc);
        out = {flipped.row, -flipped.sign};
    } else if (cc <= 0) {
        out = {1, +1};
    } else if (cc < 1) {
        out = {pi.pi_inv(n), +1};
    } else {  // c == 1: disagreement index maximizing pi(i)
        int best = 0;
        for (int i = 1; i <= n; ++i)
            if (pi.pi(i) != pi2.pi(i) && (best == 0 || pi.pi(i) > pi.pi(best))) best = i;
        out = {best, +1};
    }

    IntMat la = l_matrix(pi), lb = l_matrix(pi2);
    bool nonzero = false;
    for (int j = 0; j < n; ++j) {
        Rational e = Rational((long)la(out.row - 1, j)) - cc * Rational((long)lb(out.row - 1, j));
        if (e != 0) nonzero = true;
        if (sgn(e) * out.sign < 0)
            throw ContractViolation("sign_definite_row: selected row not sign-definite");
    }
    if (!nonzero) throw ContractViolation("sign_definite_row: selected row is zero");
    return out;
}

/// Exact restatement of "the positive vector v is never in the nullspace of
/// L_pi - c L_pi'": L_pi v != 0 and the columns [L_pi v | L_pi' v] have rank
/// two, which rules out every real or complex c at once.
inline bool positive_vector_exclusion(const Permutation& pi, const Permutation& pi2,
                                      const RatVec& v) {
    if (pi == pi2) throw Error("positive_vector_exclusion: permutations must be distinct");
    int n = pi.n();
    if ((int)v.size() != n) throw Error("positive_vector_exclusion: dimension mismatch");
    RatVec vc = v;  // guard against non-canonical caller input
    for (auto& x : vc) {
        x.canonicalize();
        if (x <= 0) throw Error("positive_vector_exclusion: vector must be positive");
    }
    IntMat la = l_matrix(pi), lb = l_matrix(pi2);
    RatVec x(n, Rational(0)), y(n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            x[i] += Rational((long)la(i, j)) * vc[j];
            y[i] += Rational((long)lb(i, j)) * vc[j];
        }
    bool x_zero = std::all_of(x.begin(), x.end(), [](const Rational& q) { return q == 0; });
    if (x_zero) return false;
    RatMat cols(n, 2);
    for (int i = 0; i < n; ++i) {
        cols(i, 0) = x[i];
        cols(i, 1) = y[i];
    }
    return (int)cols.reduce().size() == 2;
}

// ---------------------------------------------------------------------------
// Floating-point spectral checks (quarantined here)
// ---------------------------------------------------------------------------

struct SpectralReport {
    double alpha = 0;        // Perron-Frobenius eigenvalue
    std::vector<double> u;   // positive eigenvector, |u|_1 = 1
    double residual = 0;     // max|Bu - alpha u| / alpha
    long iterations = 0;
};

inline SpectralReport perron(const IntMat& b, double tol = 1e-12, long max_iter = 100000) {
    if (b.rows() != b.cols() || b.rows() < 1) throw Error("perron: non-square matrix");
    if (!b.is_positive()) throw Error("perron: matrix must be entrywise positive");
    int n = b.rows();
    std::vector<double> u(n, 1.0 / n), bu(n);
    SpectralReport rep;
    for (long it = 1; it <= max_iter; ++it) {
        double norm = 0;
        for (int i = 0; i < n; ++i) {
            double s = 0;
            for (int j = 0; j < n; ++j) s += (double)b(i, j) * u[j];
            bu[i] = s;
            norm += s;
        }
        double alpha = 0, denom = 0;
        for (int i = 0; i < n; ++i) {
            alpha += bu[i] * u[i];
            denom += u[i] * u[i];
        }
        alpha /= denom;
        double res = 0;
        for (int i = 0; i < n; ++i) res = std::max(res, std::abs(bu[i] - alpha * u[i]));
        res /= alpha;
        for (int i = 0; i < n; ++i) u[i] = bu[i] / norm;
        if (res <= tol) {
            rep.alpha = alpha;
            rep.u = u;
            rep.residual = res;
            rep.iterations = it;
            if (!(rep.alpha > 1.0)) throw ContractViolation("perron: alpha <= 1");
            for (double x : rep.u)
                if (!(x > 0)) throw ContractViolation("perron: eigenvector not positive");
            return rep;
        }
    }
    throw Error("perron: power iteration did not converge");
}

enum class PairingStatus { Pass, Fail, Skipped };

struct PairingReport {
    PairingStatus status = PairingStatus::Skipped;
    std::string detail;
    double alpha_pf = 0;
    double partner_product = 0;  // alpha_j * alpha_1 for the paired index
    int partners = 0;            // count of non-null pairing partners
};

/// Numerical check of the unique Perron-Frobenius pairing: for a positive
/// cycle matrix B at pi, exactly one eigenvector outside the nullspace of
/// L_pi pairs non-trivially with the PF eigenvector, and its eigenvalue is
/// 1/alpha_1.  Eigenvalues over the nullspace have unit modulus.  Returns
/// Skipped (never a silent pass) on ill-conditioned decompositions.
inline PairingReport pf_pairing_check(const IntMat& b, const Permutation& pi,
                                      double tol = 1e-8) {
    PairingReport rep;
    if (!b.is_positive()) throw Error("pf_pairing_check: matrix must be positive");
    IntMat l = l_matrix(pi);
    if (b.transpose() * l * b != l)
        throw Error("pf_pairing_check: B is not a cycle matrix at pi (B^T L B != L)");
    int n = b.rows();
    int m = n - rank(l);  // exact dim of N_pi

    Eigen::MatrixXd bd(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) bd(i, j) = (double)b(i, j);
    Eigen::EigenSolver<Eigen::MatrixXd> es(bd);
    if (es.info() != Eigen::Success) {
        rep.detail = "eigensolver failed";
        return rep;
    }
    Eigen::MatrixXcd v = es.eigenvectors();
    Eigen::VectorXcd alpha = es.eigenvalues();

    // Near-defective eigenbasis: refuse to classify.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
    if (svd.singularValues()(n - 1) < 1e-8) {
        rep.detail = "near-defective eigenbasis";
        return rep;
    }

    int pf = 0;
    for (int j = 1; j < n; ++j)
        if (std::abs(alpha(j)) > std::abs(alpha(pf))) pf = j;
    if (std::abs(alpha(pf).imag()) > tol * std::abs(alpha(pf))) {
        rep.detail = "PF eigenvalue not real";
        return rep;
    }
    rep.alpha_pf = alpha(pf).real();

    Eigen::MatrixXd ld(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ld(i, j) = (double)l(i, j);

    int null_count = 0, partner = -1;
    for (int j = 0; j < n; ++j) {
        if (j == pf) continue;
        Eigen::VectorXcd uj = v.col(j);
        double lnorm = (ld * uj).norm() / uj.norm();
        bool in_null = lnorm < 1e-7;
        if (in_null) {
            ++null_count;
            if (std::abs(std::abs(alpha(j)) - 1.0) > 1e-6) {
                rep.status = PairingStatus::Fail;
                rep.detail = "nullspace eigenvalue without unit modulus";
                return rep;
            }
            continue;
        }
        std::complex<double> pairing =
            (v.col(pf).conjugate().transpose() * ld.cast<std::complex<double>>() * uj)(0);
        double mag = std::abs(pairing) / (v.col(pf).norm() * uj.norm());
        // Genuine pairings sit far above tol and numerical zeros far below;
        // anything inside the band is an unreliable decomposition.
        if (mag >= tol / 100 && mag <= tol * 100) {
            rep.detail = "pairing magnitude in ambiguous band";
            return rep;  // Skipped
        }
        if (mag > tol) {
            ++rep.partners;
            partner = j;
        }
    }
    if (null_count != m) {
        rep.detail = "numerical nullspace dimension mismatch";
        return rep;  // Skipped: classification unreliable
    }
    if (rep.partners != 1) {
        rep.status = PairingStatus::Fail;
        rep.detail = "expected exactly one non-null pairing partner, got " +
                     std::to_string(rep.partners);
        return rep;
    }
    rep.partner_product = std::abs(alpha(partner) * alpha(pf));
    if (std::abs(rep.partner_product - 1.0) > tol) {
        rep.status = PairingStatus::Fail;
        rep.detail = "partner eigenvalue product differs from 1";
        return rep;
    }
    rep.status = PairingStatus::Pass;
    return rep;
}

// ---------------------------------------------------------------------------
// Uniqueness brute force
// ---------------------------------------------------------------------------

/// Memoized factorization oracle that only tracks which end permutations are
/// reachable (as a bitmask over S^0_n), not certificate paths; compact
/// enough for exhaustive uniqueness sweeps.
class EndMaskOracle {
   public:
    explicit EndMaskOracle(int n) : perms_(irreducible_permutations(n)) {
        for (size_t i = 0; i < perms_.size(); ++i) index_[perms_[i].image()] = (int)i;
    }

    int perm_count() const { return (int)perms_.size(); }
    const Permutation& perm(int i) const { return perms_[i]; }
    int index_of(const Permutation& p) const { return index_.at(p.image()); }

    std::uint32_t end_mask(int pi_idx, const IntMat& b) {
        std::string key = std::to_string(pi_idx) + "|";
        for (auto v : b.data()) key += std::to_string(v) + ",";
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        std::uint32_t mask = 0;
        if (b == IntMat::identity(b.rows())) {
            mask = 1u << pi_idx;
        } else {
            const Permutation& pi = perms_[pi_idx];
            for (const auto& kind : kAllKinds) {
                IntMat peeled = inverse_of(pi_idx, kind) * b;
                if (!peeled.is_nonnegative()) continue;
                mask |= end_mask(index_of(permutation_step(pi, kind)), peeled);
            }
        }
        memo_.emplace(std::move(key), mask);
        return mask;
    }

    bool realizes_cycle(int pi_idx, const IntMat& b) {
        return (end_mask(pi_idx, b) >> pi_idx) & 1u;
    }

   private:
    const IntMat& inverse_of(int pi_idx, const StepKind& kind) {
        int slot = pi_idx * 4 + (kind.side == Side::Left ? 2 : 0) + kind.type;
        auto it = inv_.find(slot);
        if (it == inv_.end())
            it = inv_.emplace(slot, unimodular_inverse(elementary_matrix(perms_[pi_idx], kind)))
                     .first;
        return it->second;
    }

    std::vector<Permutation> perms_;
    std::map<std::vector<int>, int> index_;
    std::unordered_map<std::string, std::uint32_t> memo_;
    std::unordered_map<int, IntMat> inv_;
};

struct MainLemmaReport {
    int n = 0;
    int max_len = 0;
    long cycles_examined = 0;        // positive cycle products found (with multiplicity)
    long distinct_products = 0;      // distinct (positive B) matrices checked
    long violations = 0;             // expected 0
    std::vector<std::pair<IntMat, std::vector<int>>> violating;  // B and realizing bases
};

/// For every positive product of an extended Rauzy cycle of length <= max_len
/// at any pi in S^0_n, verify no distinct pi' realizes the same matrix as a
/// cycle product (of any length) at pi'.
inline MainLemmaReport main_lemma_check(int n, int max_len) {
    if (n < 2 || n > 4) throw Error("main_lemma_check: n must be in {2,3,4}");
    MainLemmaReport rep;
    rep.n = n;
    rep.max_len = max_len;
    EndMaskOracle oracle(n);

    // base permutation index -> set of positive cycle products observed there
    std::map<std::vector<std::int64_t>, std::uint32_t> positive_products;

    for (int base = 0; base < oracle.perm_count(); ++base) {
        const Permutation& basep = oracle.perm(base);
        std::vector<StepKind> path;
        auto rec = [&](auto&& self, const Permutation& cur, const IntMat& prod) -> void {
            if ((int)path.size() >= max_len) return;
            for (const auto& kind : kAllKinds) {
                IntMat next_prod = prod * elementary_matrix(cur, kind);
                Permutation next = permutation_step(cur, kind);
                path.push_back(kind);
                if (next == basep && next_prod.is_positive()) {
                    ++rep.cycles_examined;
                    positive_products[next_prod.data()] |= 1u << base;
                }
                self(self, next, next_prod);
                path.pop_back();
            }
        };
        rec(rec, basep, IntMat::identity(n));
    }

    rep.distinct_products = (long)positive_products.size();
    for (const auto& [data, observed_mask] : positive_products) {
        IntMat b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b(i, j) = data[size_t(i) * n + j];
        std::vector<int> realizing;
        for (int p = 0; p < oracle.perm_count(); ++p)
            if (oracle.realizes_cycle(p, b)) realizing.push_back(p);
        if ((int)realizing.size() > 1) {
            ++rep.violations;
            rep.violating.emplace_back(b, realizing);
        }
        (void)observed_mask;
    }
    return rep;
}

}  // namespace rauzy
