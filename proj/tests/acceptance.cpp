// Acceptance gate: one exact or property-based check per core guarantee of
// the library.  Prints one pass/fail line per criterion and exits non-zero
// if any criterion fails.  Deliberately independent of the Catch2 suite.

#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rauzy/induced.hpp"
#include "rauzy/recover.hpp"
#include "rauzy/verify.hpp"
#include "../tests/helpers.hpp"

using namespace rauzy;
using namespace rauzy::testutil;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::printf("criterion %02d %-34s %s  (%s)\n", idx, name.c_str(),
                ok ? "pass" : "FAIL", detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- 1. row-sum inversion: permutation_from_l o l_matrix = id on all of S_n.
void c01() {
    auto t0 = std::chrono::steady_clock::now();
    long checked = 0, bad = 0;
    for (int n = 2; n <= 7; ++n)
        for (const auto& pi : all_permutations(n, false)) {
            auto back = permutation_from_l(l_matrix(pi));
            ++checked;
            if (!back || *back != pi) ++bad;
        }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%ld permutations, %ld mismatches, %.2fs", checked, bad,
                  seconds_since(t0));
    report(1, "row-sum inversion", bad == 0 && seconds_since(t0) < 10.0, buf);
}

// --- 2. orbit-count identity: #Sigma(pi) = dim N_pi + 1 and span{b_S} = N_pi.
void c02() {
    auto t0 = std::chrono::steady_clock::now();
    long checked = 0, bad = 0;
    for (int n = 2; n <= 6; ++n)
        for (const auto& pi : irreducible_permutations(n)) {
            ++checked;
            IntMat l = l_matrix(pi);
            int dim = n - rank(l);
            SigmaPartition part = sigma_partition(pi);
            if ((int)part.blocks.size() != dim + 1) { ++bad; continue; }
            // every b_S lies in the nullspace, and the b_S span all of it
            RatMat span((int)part.blocks.size(), n);
            bool in_null = true;
            for (size_t s = 0; s < part.blocks.size(); ++s) {
                auto b = b_vector(part.blocks[s], n);
                auto img = l.apply(b);
                for (auto v : img) in_null = in_null && v == 0;
                for (int j = 0; j < n; ++j) span((int)s, j) = Rational(b[j]);
            }
            if (!in_null || (int)span.reduce().size() != dim) ++bad;
        }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%ld permutations, %ld mismatches, %.2fs", checked, bad,
                  seconds_since(t0));
    report(2, "orbit-count identity", bad == 0 && seconds_since(t0) < 30.0, buf);
}

// --- 3. single-step conjugation: A^T L A = L' for every kind at every base.
void c03() {
    long checked = 0, bad = 0;
    for (int n = 2; n <= 5; ++n)
        for (const auto& pi : irreducible_permutations(n))
            for (const auto& kind : kAllKinds) {
                ++checked;
                IntMat a = elementary_matrix(pi, kind);
                Permutation nxt = permutation_step(pi, kind);
                if (a.transpose() * l_matrix(pi) * a != l_matrix(nxt)) ++bad;
            }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%ld steps, %ld mismatches", checked, bad);
    report(3, "single-step conjugation", bad == 0, buf);
}

// Match v against the signed b-vectors of the still-unused blocks; -1 if no
// match.  Greedy matching is needed because distinct blocks can carry
// opposite b-vectors (e.g. when Sigma has exactly two blocks).
int match_signed(const std::vector<std::int64_t>& v,
                 const std::vector<std::vector<std::int64_t>>& bvecs,
                 std::vector<bool>& used) {
    for (size_t t = 0; t < bvecs.size(); ++t) {
        if (used[t]) continue;
        bool plus = true, minus = true, zero = true;
        for (size_t i = 0; i < v.size(); ++i) {
            plus = plus && v[i] == bvecs[t][i];
            minus = minus && v[i] == -bvecs[t][i];
            zero = zero && bvecs[t][i] == 0;
        }
        if (plus || (minus && !zero)) {
            used[t] = true;
            return (int)t;
        }
    }
    return -1;
}

// --- 4. signed basis transport: each elementary A maps the successor's
//        {±b_S'} bijectively onto the base's {±b_S}.
void c04() {
    long checked = 0, bad = 0;
    for (int n = 2; n <= 5; ++n)
        for (const auto& pi : irreducible_permutations(n))
            for (const auto& kind : kAllKinds) {
                ++checked;
                IntMat a = elementary_matrix(pi, kind);
                Permutation nxt = permutation_step(pi, kind);
                SigmaPartition pa = sigma_partition(pi), pb = sigma_partition(nxt);
                if (pa.blocks.size() != pb.blocks.size()) { ++bad; continue; }
                std::vector<std::vector<std::int64_t>> bvecs;
                for (const auto& blk : pa.blocks) bvecs.push_back(b_vector(blk, n));
                std::vector<bool> used(bvecs.size(), false);
                bool ok = true;
                for (const auto& blk : pb.blocks)
                    ok = ok && match_signed(a.apply(b_vector(blk, n)), bvecs, used) >= 0;
                if (!ok) ++bad;
            }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%ld steps, %ld mismatches", checked, bad);
    report(4, "signed basis transport", bad == 0, buf);
}

// --- 5. length transport: lambda = A lambda' per step, lambda = B lambda^(N)
//        per drive, over random quadratic drives.
void c05() {
    std::mt19937 rng(20260826);
    std::uniform_int_distribution<int> pick_n(2, 4), pick_len(1, 25);
    long bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        InductionTrace tr = rand_drive(rng, pick_n(rng), pick_len(rng));
        std::vector<Scalar> lam = tr.initial.lambda;
        for (int k = 0; k < tr.size(); ++k) {
            auto t = tr.steps[k].matrix.apply(tr.states[k].lambda);
            for (int i = 0; i < (int)lam.size(); ++i)
                if (t[i] != lam[i]) ++bad;
            lam = tr.states[k].lambda;
        }
        auto full = tr.full_product().apply(tr.states.back().lambda);
        for (int i = 0; i < (int)full.size(); ++i)
            if (full[i] != tr.initial.lambda[i]) ++bad;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "100 drives, %ld mismatches", bad);
    report(5, "length transport", bad == 0, buf);
}

// --- 6. positive windows: the golden 2-IET gets a positive product by the
//        second step; quadratic 3-IETs reach positive windows quickly.
void c06() {
    bool ok = true;
    std::string detail;
    InductionTrace tr = drive(golden_swap(), DrivePolicy::AlwaysRight, 5);
    auto w = first_positive_window(tr, 1);
    ok = ok && w && *w == 2 && tr.product(1, 2) == IntMat(2, 2, {2, 1, 1, 1});
    if (!ok) detail = "golden window mismatch";
    // quadratic 3-IETs with bounded partial quotients (golden- and
    // silver-flavoured lengths) at every irreducible base
    int instances = 0;
    for (const auto& pi : irreducible_permutations(3)) {
        for (int preset = 0; preset < 2 && ok; ++preset) {
            std::vector<Scalar> lam;
            for (int i = 1; i <= 3; ++i)
                lam.push_back(preset == 0 ? Scalar(Rational(2 - i, 2), Rational(i, 2), 5)
                                          : Scalar(Rational(1 - i), Rational(i), 2));
            InductionTrace t3 = drive(make_iet(pi, lam), DrivePolicy::AlwaysRight, 45);
            ++instances;
            for (int j = 1; j <= 10 && ok; ++j) {
                auto wj = first_positive_window(t3, j);
                if (!wj || *wj > j + 30) {
                    ok = false;
                    detail = "slow window at j=" + std::to_string(j);
                }
            }
        }
    }
    if (ok)
        detail = "golden window (1,2) + " + std::to_string(instances) +
                 " quadratic 3-IETs, all starts j<=10 within 30";
    report(6, "positive windows", ok, detail);
}

// --- 7. natural decomposition: piece counts in [n, n+2] on random
//        sub-intervals; visitation matrices compose over nested intervals.
void c07() {
    std::mt19937 rng(99);
    long pieces_checked = 0, bad = 0;
    for (int n = 2; n <= 4; ++n) {
        IET t;
        for (;;) {
            try {
                t = make_iet(rand_irreducible(rng, n), rand_quadratic_lengths(rng, n));
                drive(t, DrivePolicy::Alternate, 4);  // reject near-degenerate samples
                break;
            } catch (const TieError&) {
            }
        }
        for (int trial = 0; trial < 50; ++trial) {
            SubInterval j = rand_subinterval(rng, t);
            if (!(j.a < j.b)) continue;
            try {
                auto dec = natural_decomposition(t, j);
                ++pieces_checked;
                int m = (int)dec.pieces.size();
                if (m < n || m > n + 2) ++bad;
            } catch (const Error&) {
                // orbit cap or tie: resample
            }
        }
    }
    // composition over nested intervals: A(T, J2) = A(T, J1) * A(T|J1, J2)
    long triples = 0, comp_bad = 0;
    std::uniform_int_distribution<int> pick_n(2, 3);
    while (triples < 20) {
        InductionTrace tr = rand_drive(rng, pick_n(rng), 8);
        const IET& t = tr.initial;
        const IET& mid = tr.states[3];   // induced map on J1 (after 4 steps)
        const IET& inner = tr.states[7]; // J2 (after 8 steps)
        SubInterval j1{mid.left(), mid.right()}, j2{inner.left(), inner.right()};
        try {
            IntMat a_full = visitation_from_decomposition(t, natural_decomposition(t, j2));
            IntMat a_outer = visitation_from_decomposition(t, natural_decomposition(t, j1));
            IntMat a_inner = visitation_from_decomposition(mid, natural_decomposition(mid, j2));
            ++triples;
            if (a_full != a_outer * a_inner) ++comp_bad;
        } catch (const Error&) {
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%ld decompositions (%ld out of bounds), 20 triples (%ld broken)",
                  pieces_checked, bad, comp_bad);
    report(7, "decomposition piece bounds", bad == 0 && comp_bad == 0 && pieces_checked >= 100, buf);
}

// --- 8. admissibility <=> realizability, with product = visitation on success.
void c08() {
    std::mt19937 rng(424242);
    long tested = 0, disagree = 0, prod_bad = 0, admissible_seen = 0;
    std::uniform_int_distribution<int> pick_n(2, 3);
    std::uniform_int_distribution<int> pick_len(2, 8);
    while (tested < 100) {
        // alternate between arbitrary sub-intervals (usually inadmissible)
        // and induced intervals from a drive (admissible by construction)
        IET t;
        SubInterval j{Scalar(0), Scalar(0)};
        try {
            if (tested % 2 == 0) {
                t = make_iet(rand_irreducible(rng, pick_n(rng)),
                             rand_quadratic_lengths(rng, pick_n(rng)));
                j = rand_subinterval(rng, t);
            } else {
                InductionTrace tr = rand_drive(rng, pick_n(rng), pick_len(rng));
                t = tr.initial;
                const IET& last = tr.states.back();
                j = {last.left(), last.right()};
            }
        } catch (const Error&) {
            continue;
        }
        if (!(j.a < j.b)) continue;
        try {
            auto [adm, dec] = is_admissible(t, j);
            auto path = realize_interval(t, j);
            ++tested;
            if (adm != path.has_value()) { ++disagree; continue; }
            if (adm) {
                ++admissible_seen;
                if (path_product(path->base, path->kinds) !=
                    visitation_from_decomposition(t, dec))
                    ++prod_bad;
            }
        } catch (const Error&) {
            // ties / orbit caps: resample
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "100 sub-intervals, %ld disagreements, %ld product mismatches, %ld admissible",
                  disagree, prod_bad, admissible_seen);
    report(8, "admissible iff realizable", disagree == 0 && prod_bad == 0 && admissible_seen > 0,
           buf);
}

// --- 9. cycle nullspace action: B^p b_S = b_S on every enumerated cycle.
void c09() {
    auto t0 = std::chrono::steady_clock::now();
    long cycles = 0, bad = 0;
    auto sweep = [&](int n, int max_len) {
        for (const auto& pi : irreducible_permutations(n)) {
            auto en = enumerate_cycles(pi, max_len, SideSet::Extended);
            for (const auto& cyc : en.cycles) {
                ++cycles;
                try {
                    cycle_b_action(pi, cyc);  // throws if B^p b_S != b_S
                } catch (const Error&) {
                    ++bad;
                }
            }
        }
    };
    sweep(3, 8);
    sweep(4, 6);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%ld cycles, %ld failures, %.2fs", cycles, bad,
                  seconds_since(t0));
    report(9, "cycle nullspace action", bad == 0, buf);
}

// --- 10. sign-definite rows + positive-vector exclusion over all distinct
//         pairs of irreducible permutations.
void c10() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> num(-12, 12), den(1, 12);
    long rows = 0, row_bad = 0, excl = 0, excl_bad = 0;
    for (int n = 2; n <= 5; ++n) {
        auto perms = irreducible_permutations(n);
        std::vector<Rational> cs = {Rational(-3), Rational(0), Rational(1, 2), Rational(1),
                                    Rational(2)};
        for (int k = 0; k < 200; ++k) {
            Rational c(num(rng), den(rng));
            c.canonicalize();
            cs.push_back(c);
        }
        for (const auto& a : perms)
            for (const auto& b : perms) {
                if (a == b) continue;
                for (const auto& c : cs) {
                    ++rows;
                    try {
                        sign_definite_row(a, b, c);  // re-verifies the row exactly
                    } catch (const Error&) {
                        ++row_bad;
                    }
                }
                for (int k = 0; k < 20; ++k) {
                    RatVec v(n);
                    for (auto& x : v) x = rand_rational(rng);
                    ++excl;
                    try {
                        if (!positive_vector_exclusion(a, b, v)) ++excl_bad;
                    } catch (const Error&) {
                        ++excl_bad;
                    }
                }
            }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%ld row checks (%ld bad), %ld exclusions (%ld bad), %.2fs",
                  rows, row_bad, excl, excl_bad, seconds_since(t0));
    report(10, "sign rows and exclusion", row_bad == 0 && excl_bad == 0, buf);
}

// --- 11. spectral pairing on positive cycle matrices, tolerance 1e-8,
//         skips (defective decompositions) at most 10%.
void c11() {
    long pass = 0, fail = 0, skip = 0;
    std::set<std::vector<std::int64_t>> seen;
    std::vector<std::pair<IntMat, Permutation>> samples;
    for (int n = 2; n <= 4 && (int)samples.size() < 50; ++n) {
        int max_len = n == 4 ? 6 : 8;
        for (const auto& pi : irreducible_permutations(n)) {
            auto en = enumerate_cycles(pi, max_len, SideSet::Extended);
            for (const auto& cyc : en.cycles) {
                IntMat b = path_product(pi, cyc);
                if (!b.is_positive()) continue;
                if (!seen.insert(b.data()).second) continue;
                samples.emplace_back(b, pi);
                if ((int)samples.size() >= 50) break;
            }
            if ((int)samples.size() >= 50) break;
        }
    }
    for (const auto& [b, pi] : samples) {
        PairingReport rep = pf_pairing_check(b, pi, 1e-8);
        if (rep.status == PairingStatus::Pass) ++pass;
        else if (rep.status == PairingStatus::Fail) ++fail;
        else ++skip;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu matrices: %ld pass, %ld fail, %ld skipped",
                  samples.size(), pass, fail, skip);
    report(11, "spectral pairing", samples.size() == 50 && fail == 0 && skip * 10 <= (long)samples.size(),
           buf);
}

// --- 12. uniqueness brute force: no positive cycle product is realized as a
//         cycle at two distinct bases.
void c12() {
    auto t0 = std::chrono::steady_clock::now();
    MainLemmaReport r3 = main_lemma_check(3, 10);
    MainLemmaReport r4 = main_lemma_check(4, 6);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "n=3: %ld products %ld violations; n=4: %ld products %ld violations; %.1fs",
                  r3.distinct_products, r3.violations, r4.distinct_products, r4.violations,
                  seconds_since(t0));
    report(12, "uniqueness brute force", r3.violations == 0 && r4.violations == 0 &&
           seconds_since(t0) < 300.0, buf);
}

// --- 13. end-to-end recovery: grouped products of a random drive identify
//         the generating permutation uniquely once a positive window exists.
void c13() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(600613);
    std::uniform_int_distribution<int> pick_n(3, 4), pick_len(6, 30), coin(0, 2);
    long trials = 0, with_window = 0, unique_ok = 0, missing_gen = 0, non_unique = 0;
    while (trials < 100) {
        int n = pick_n(rng);
        InductionTrace tr = rand_drive(rng, n, pick_len(rng));
        // random grouping; occasionally the two structured extremes
        std::vector<int> cuts;
        int style = coin(rng);
        if (style == 0) {
            cuts.push_back(tr.size());  // one block
        } else if (style == 1) {
            for (int k = 1; k <= tr.size(); ++k) cuts.push_back(k);  // elementary blocks
        } else {
            std::uniform_int_distribution<int> gap(1, 5);
            for (int k = gap(rng); k < tr.size(); k += gap(rng)) cuts.push_back(k);
            if (cuts.empty() || cuts.back() != tr.size()) cuts.push_back(tr.size());
        }
        GroupedProducts g = group_products(tr, cuts);
        ++trials;
        // does some contiguous window of blocks have a positive product?
        bool window = false;
        for (size_t i = 0; i < g.products.size() && !window; ++i) {
            IntMat b = g.products[i];
            for (size_t k = i; k < g.products.size() && !window; ++k) {
                if (k > i) b = b * g.products[k];
                window = b.is_positive();
            }
        }
        RecoveryReport rep = recover_strict(g.products, n);
        bool has_gen = false;
        for (const auto& cand : rep.candidates) has_gen |= cand.pi == tr.initial.pi;
        if (!has_gen) ++missing_gen;
        if (window) {
            ++with_window;
            if (rep.candidates.size() == 1 && has_gen) ++unique_ok;
            else ++non_unique;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "100 drives, %ld with positive window (%ld unique, %ld not), %ld lost generator, %.1fs",
                  with_window, unique_ok, non_unique, missing_gen, seconds_since(t0));
    report(13, "end-to-end recovery", missing_gen == 0 && non_unique == 0 && with_window >= 20,
           buf);
}

}  // namespace

int main() {
    c01(); c02(); c03(); c04(); c05(); c06(); c07();
    c08(); c09(); c10(); c11(); c12(); c13();
    if (g_failures == 0) {
        std::printf("acceptance: all 13 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
