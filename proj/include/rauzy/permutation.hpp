#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "rauzy/errors.hpp"
#include "rauzy/matrix.hpp"

namespace rauzy {

/// Permutation of {1..n}, stored 1-indexed (image[i-1] = pi(i)).
/// The extension pi(0) = 0, pi(n+1) = n+1 is implicit and only materialized
/// by the sigma-orbit machinery below.
class Permutation {
   public:
    Permutation() = default;
    explicit Permutation(std::vector<int> image) : img_(std::move(image)) {
        int n = (int)img_.size();
        if (n < 1) throw Error("permutation: empty image");
        std::vector<bool> seen(n + 1, false);
        for (int v : img_) {
            if (v < 1 || v > n || seen[v]) throw Error("permutation: image is not a bijection");
            seen[v] = true;
        }
    }

    int n() const { return (int)img_.size(); }
    int pi(int i) const { return img_[i - 1]; }  // 1 <= i <= n
    const std::vector<int>& image() const { return img_; }

    int pi_inv(int v) const {
        for (int i = 1; i <= n(); ++i)
            if (pi(i) == v) return i;
        throw Error("permutation: value out of range");
    }

    bool is_irreducible() const {
        int maxv = 0;
        for (int i = 1; i < n(); ++i) {
            maxv = std::max(maxv, pi(i));
            if (maxv == i) return false;
        }
        return true;
    }

    /// pi_tau(i) = n+1 - pi(n+1-i); conjugation by the index reversal.
    Permutation tau_dual() const {
        std::vector<int> img(n());
        for (int i = 1; i <= n(); ++i) img[i - 1] = n() + 1 - pi(n() + 1 - i);
        return Permutation(img);
    }

    friend bool operator==(const Permutation& x, const Permutation& y) {
        return x.img_ == y.img_;
    }
    friend bool operator!=(const Permutation& x, const Permutation& y) {
        return !(x == y);
    }
    friend bool operator<(const Permutation& x, const Permutation& y) {
        return x.img_ < y.img_;
    }

   private:
    std::vector<int> img_;
};

/// The anti-symmetric matrix L_pi with (L)_ij = 1 if i<j and pi(i)>pi(j),
/// -1 if i>j and pi(i)<pi(j), 0 otherwise.
inline IntMat l_matrix(const Permutation& p) {
    int n = p.n();
    IntMat l(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i < j && p.pi(i) > p.pi(j)) l(i - 1, j - 1) = 1;
            else if (i > j && p.pi(i) < p.pi(j)) l(i - 1, j - 1) = -1;
        }
    return l;
}

/// Invert pi(i) - i = sum_j (L_pi)_ij, then confirm the candidate actually
/// produces M.  Row sums alone are a necessary signature, not a sufficient
/// one, so the round-trip check is mandatory.
inline std::optional<Permutation> permutation_from_l(const IntMat& m) {
    if (m.rows() != m.cols() || m.rows() < 1) return std::nullopt;
    int n = m.rows();
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) {
        std::int64_t s = 0;
        for (int j = 0; j < n; ++j) s += m(i, j);
        std::int64_t v = s + i + 1;
        if (v < 1 || v > n) return std::nullopt;
        img[i] = (int)v;
    }
    std::vector<bool> seen(n + 1, false);
    for (int v : img) {
        if (seen[v]) return std::nullopt;
        seen[v] = true;
    }
    Permutation cand(img);
    if (l_matrix(cand) != m) return std::nullopt;
    return cand;
}

/// Orbits of sigma_pi(i) = pi^{-1}(pi(i)+1) - 1 on {0,...,n}, with the
/// extension pi(0)=0, pi(n+1)=n+1.  Blocks are listed with their minimum
/// first and sorted by minimum.
struct SigmaPartition {
    int n = 0;
    std::vector<std::vector<int>> blocks;
};

inline int sigma_apply(const Permutation& p, int i) {
    int n = p.n();
    // Extended permutation: pi(0)=0, pi(n+1)=n+1.
    int v = (i == 0) ? 0 : p.pi(i);
    int target = v + 1;
    int inv = (target == n + 1) ? n + 1 : p.pi_inv(target);
    return inv - 1;
}

inline SigmaPartition sigma_partition(const Permutation& p) {
    if (!p.is_irreducible()) throw ContractViolation("sigma_partition: reducible permutation");
    int n = p.n();
    SigmaPartition part;
    part.n = n;
    std::vector<bool> seen(n + 1, false);
    for (int start = 0; start <= n; ++start) {
        if (seen[start]) continue;
        std::vector<int> block;
        int i = start;
        do {
            seen[i] = true;
            block.push_back(i);
            i = sigma_apply(p, i);
        } while (i != start);
        std::sort(block.begin(), block.end());
        part.blocks.push_back(std::move(block));
    }
    std::sort(part.blocks.begin(), part.blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return part;
}

/// b_S with (b_S)_i = chi_S(i-1) - chi_S(i), entries in {-1,0,1}.
inline std::vector<std::int64_t> b_vector(const std::vector<int>& block, int n) {
    std::vector<bool> in(n + 1, false);
    for (int s : block) {
        if (s < 0 || s > n) throw Error("b_vector: block element out of range");
        in[s] = true;
    }
    std::vector<std::int64_t> b(n);
    for (int i = 1; i <= n; ++i) b[i - 1] = (in[i - 1] ? 1 : 0) - (in[i] ? 1 : 0);
    return b;
}

/// Greedy rank-extension over the b_S in block order; yields a basis of
/// N_pi of size #Sigma(pi) - 1.
inline std::vector<std::vector<std::int64_t>> nullspace_basis_from_sigma(const Permutation& p) {
    SigmaPartition part = sigma_partition(p);
    int n = p.n();
    std::vector<std::vector<std::int64_t>> basis;
    RatMat probe(n, n);  // rows: selected vectors, re-reduced per candidate
    for (const auto& block : part.blocks) {
        auto b = b_vector(block, n);
        bool zero = std::all_of(b.begin(), b.end(), [](std::int64_t v) { return v == 0; });
        if (zero) continue;
        RatMat m((int)basis.size() + 1, n);
        for (size_t r = 0; r < basis.size(); ++r)
            for (int c = 0; c < n; ++c) m((int)r, c) = Rational((long)basis[r][c]);
        for (int c = 0; c < n; ++c) m((int)basis.size(), c) = Rational((long)b[c]);
        if ((int)m.reduce().size() == (int)basis.size() + 1) basis.push_back(std::move(b));
    }
    if ((int)basis.size() != (int)part.blocks.size() - 1)
        throw ContractViolation("sigma basis size != #Sigma - 1");
    return basis;
}

/// All permutations of {1..n}; irreducible-only when filter is set.
inline std::vector<Permutation> all_permutations(int n, bool irreducible_only) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    std::vector<Permutation> out;
    do {
        Permutation p(img);
        if (!irreducible_only || p.is_irreducible()) out.push_back(p);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

inline std::vector<Permutation> irreducible_permutations(int n) {
    return all_permutations(n, true);
}

}  // namespace rauzy
