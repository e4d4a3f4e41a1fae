#pragma once

#include <random>
#include <vector>

#include "rauzy/iet.hpp"
#include "rauzy/induced.hpp"
#include "rauzy/permutation.hpp"
#include "rauzy/rauzy.hpp"

namespace rauzy::testutil {

inline Rational rand_rational(std::mt19937& rng, int lo = 1, int hi = 12) {
    std::uniform_int_distribution<int> num(lo, hi), den(1, hi);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

/// Random lengths in Q(sqrt(D)) with positive rational and sqrt parts, so
/// positivity is immediate and ties under induction are rare (resampled by
/// callers when they do occur).
inline std::vector<Scalar> rand_quadratic_lengths(std::mt19937& rng, int n, long d = 5) {
    std::vector<Scalar> lam;
    for (int i = 0; i < n; ++i)
        lam.push_back(Scalar(rand_rational(rng), rand_rational(rng), d));
    return lam;
}

inline Permutation rand_irreducible(std::mt19937& rng, int n) {
    auto perms = irreducible_permutations(n);
    std::uniform_int_distribution<size_t> pick(0, perms.size() - 1);
    return perms[pick(rng)];
}

inline std::vector<Side> rand_sides(std::mt19937& rng, int n_steps) {
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<Side> sides(n_steps);
    for (auto& s : sides) s = coin(rng) ? Side::Right : Side::Left;
    return sides;
}

/// Drive a random quadratic IET; resamples lengths on TieError (rational
/// dependence between two sampled lengths can stall induction).
inline InductionTrace rand_drive(std::mt19937& rng, int n, int n_steps,
                                 int max_attempts = 50) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Permutation pi = rand_irreducible(rng, n);
        auto lam = rand_quadratic_lengths(rng, n);
        try {
            return drive(make_iet(pi, lam), rand_sides(rng, n_steps));
        } catch (const TieError&) {
            continue;
        }
    }
    throw Error("rand_drive: every sampled instance hit a tie");
}

/// Random sub-interval of T's domain with quadratic endpoints.
inline SubInterval rand_subinterval(std::mt19937& rng, const IET& t) {
    std::uniform_int_distribution<int> num(0, 40);
    Scalar len = t.total();
    Scalar a = t.left() + len * Scalar(Rational(num(rng), 64));
    Scalar b = t.left() + len * Scalar(Rational(num(rng) + 20, 64));
    if (b > t.right()) b = t.right();
    return {a, b};
}

inline Scalar golden() { return Scalar(Rational(1, 2), Rational(1, 2), 5); }  // (1+sqrt5)/2

inline IET golden_swap() {
    return make_iet(Permutation({2, 1}), {golden(), Scalar(1)});
}

}  // namespace rauzy::testutil
