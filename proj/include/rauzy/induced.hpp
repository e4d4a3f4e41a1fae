#pragma once

#include <algorithm>
#include <vector>

#include "rauzy/errors.hpp"
#include "rauzy/iet.hpp"
#include "rauzy/rauzy.hpp"

namespace rauzy {

/// Half-open sub-interval [a, b).
struct SubInterval {
    Scalar a, b;

    bool contains(const Scalar& x) const { return x >= a && x < b; }
    Scalar length() const { return b - a; }
};

inline int default_orbit_cap() {
    if (const char* env = std::getenv("RAUZY_LAB_STEP_CAP")) {
        long v = std::atol(env);
        if (v > 0) return (int)v;
    }
    return 1000000;
}

/// min{k >= 1 : T^k x in J}.
inline int return_time(const IET& t, const SubInterval& j, const Scalar& x,
                       int cap = default_orbit_cap()) {
    if (!j.contains(x)) throw DomainError("return_time: point outside sub-interval");
    Scalar y = x;
    for (int k = 1; k <= cap; ++k) {
        y = evaluate(t, y);
        if (j.contains(y)) return k;
    }
    throw ReturnOverflow("return_time: iteration cap exceeded");
}

struct Piece {
    SubInterval interval;
    int return_time = 0;
    std::vector<int> word;  // interval index of T^k x for 0 <= k < r, 1-based
};

struct NaturalDecomposition {
    SubInterval domain;
    std::vector<Piece> pieces;  // left-to-right

    int piece_count() const { return (int)pieces.size(); }
};

namespace detail {

/// First backward image of z lying strictly inside (a, b); nullopt only via
/// the iteration cap (ReturnOverflow).  z may equal the right endpoint of
/// the ambient domain, handled by evaluate_inverse's closure convention.
inline Scalar first_backward_entry(const IET& t, const SubInterval& j, Scalar z, int cap) {
    for (int k = 0; k <= cap; ++k) {
        if (z > j.a && z < j.b) return z;
        z = evaluate_inverse(t, z);
    }
    throw ReturnOverflow("natural_decomposition: backward orbit cap exceeded");
}

inline std::vector<int> return_word(const IET& t, const SubInterval& j, const Scalar& x,
                                    int cap) {
    std::vector<int> word;
    Scalar y = x;
    for (int k = 0; k <= cap; ++k) {
        word.push_back(interval_index(t, y));
        y = evaluate(t, y);
        if (j.contains(y)) return word;
    }
    throw ReturnOverflow("return word: iteration cap exceeded");
}

}  // namespace detail

/// Cut points are the first backward entries into
/// (a, b) of D' = {a, b, 0, beta_1, ..., beta_{n-1}}, plus a itself.
inline NaturalDecomposition natural_decomposition(const IET& t, const SubInterval& j,
                                                  int cap = default_orbit_cap()) {
    if (!(j.a < j.b)) throw Error("natural_decomposition: degenerate sub-interval");
    if (j.a < t.left() || j.b > t.right())
        throw DomainError("natural_decomposition: sub-interval outside IET domain");

    std::vector<Scalar> seeds{j.a, j.b, t.left()};
    for (int i = 1; i < t.n(); ++i) seeds.push_back(t.origin + t.beta[i]);

    std::vector<Scalar> cuts{j.a};
    for (const auto& z : seeds) cuts.push_back(detail::first_backward_entry(t, j, z, cap));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    NaturalDecomposition dec;
    dec.domain = j;
    for (size_t i = 0; i < cuts.size(); ++i) {
        SubInterval piece{cuts[i], i + 1 < cuts.size() ? cuts[i + 1] : j.b};
        Scalar mid = (piece.a + piece.b) / Scalar(2);
        Piece p;
        p.interval = piece;
        p.word = detail::return_word(t, j, mid, cap);
        p.return_time = (int)p.word.size();
        dec.pieces.push_back(std::move(p));
    }
    int m = dec.piece_count();
    if (m < t.n() || m > t.n() + 2)
        throw ContractViolation("natural decomposition: piece count outside [n, n+2]");
    return dec;
}

inline bool is_admissible(const NaturalDecomposition& dec, int n) {
    return dec.piece_count() == n;
}

inline std::pair<bool, NaturalDecomposition> is_admissible(const IET& t, const SubInterval& j,
                                                           int cap = default_orbit_cap()) {
    NaturalDecomposition dec = natural_decomposition(t, j, cap);
    return {is_admissible(dec, t.n()), dec};
}

/// A_{ij} = #{0 <= k < r_j : T^k J_j in I_i}.  The bound runs over the
/// column index so that lambda = A lambda' holds; verified before returning.
inline IntMat visitation_from_decomposition(const IET& t, const NaturalDecomposition& dec) {
    int n = t.n();
    if (!is_admissible(dec, n)) throw Error("visitation: sub-interval not admissible");
    IntMat a(n, n);
    for (int jj = 0; jj < n; ++jj)
        for (int i : dec.pieces[jj].word) a(i - 1, jj) += 1;
    std::vector<Scalar> lam_prime;
    for (const auto& p : dec.pieces) lam_prime.push_back(p.interval.length());
    auto back = a.apply(lam_prime);
    for (int i = 0; i < n; ++i)
        if (back[i] != t.lambda[i])
            throw ContractViolation("visitation: lambda != A lambda'");
    return a;
}

inline IntMat visitation_from_decomposition(const IET& t, const SubInterval& j,
                                            int cap = default_orbit_cap()) {
    return visitation_from_decomposition(t, natural_decomposition(t, j, cap));
}

/// The induced n-IET on an admissible J, re-based so its domain starts at 0.
/// The permutation is read off from the order of the piece images under
/// T^{r}.
inline IET induced_iet(const IET& t, const NaturalDecomposition& dec) {
    int n = t.n();
    if (!is_admissible(dec, n)) throw Error("induced_iet: sub-interval not admissible");
    std::vector<Scalar> image_left(n, Scalar(0));
    for (int jj = 0; jj < n; ++jj) {
        Scalar y = dec.pieces[jj].interval.a;
        // The orbit of the left endpoint may graze piece boundaries; use the
        // midpoint's translation instead and transport the endpoint with it.
        Scalar mid = (dec.pieces[jj].interval.a + dec.pieces[jj].interval.b) / Scalar(2);
        Scalar mid_img = mid;
        for (int k = 0; k < dec.pieces[jj].return_time; ++k) mid_img = evaluate(t, mid_img);
        image_left[jj] = mid_img - (mid - y);
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return image_left[x] < image_left[y]; });
    std::vector<int> img(n);
    for (int pos = 0; pos < n; ++pos) img[order[pos]] = pos + 1;
    std::vector<Scalar> lam;
    for (const auto& p : dec.pieces) lam.push_back(p.interval.length());
    return make_iet(Permutation(img), lam);
}

inline IET induced_iet(const IET& t, const SubInterval& j, int cap = default_orbit_cap()) {
    return induced_iet(t, natural_decomposition(t, j, cap));
}

}  // namespace rauzy
