#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "polyfrac/gcd.hpp"
#include "polyfrac/generate.hpp"
#include "polyfrac/matrix.hpp"
#include "polyfrac/op_path.hpp"
#include "polyfrac/oracle.hpp"

namespace polyfrac {

inline std::size_t log2_exact(std::size_t n) {
    if (!is_power_of_two(n)) throw DomainError("size " + std::to_string(n) + " is not a power of two");
    std::size_t k = 0;
    while ((std::size_t(1) << k) < n) ++k;
    return k;
}

/// Systematic content predicted for an intermediate matrix, as a power of a
/// leading principal minor of the root: Det(A[0..minor_size))^power.
/// Degrees are in units of the root's uniform entry degree d.
struct ContentPrediction {
    std::size_t minor_size = 0; // 0 encodes the trivial content 1
    std::size_t power = 0;
    std::size_t predicted_degree = 0;
    std::size_t post_cancel_degree = 0;

    [[nodiscard]] bool trivial() const { return minor_size == 0 || power == 0; }
    friend bool operator==(const ContentPrediction&, const ContentPrediction&) = default;
};

namespace detail {

inline ContentPrediction make_prediction(std::size_t minor, std::size_t power, std::size_t post) {
    if (minor == 0 || power == 0) return {0, 0, 0, post};
    return {minor, power, minor * power, post};
}

} // namespace detail

/// Content of the i-th matrix on the pure-DELTA spine (Delta_i, size n/2^{i+1}):
/// Det(A[0..(2^i-1)n/2^i))^{n/2^{i+1}}, leaving degree ((2^{i+1}-1)n/2^{i+1} + 1)d.
inline ContentPrediction predict_delta_content(std::size_t i, std::size_t n) {
    std::size_t levels = log2_exact(n);
    if (levels < 2 || i > levels - 2)
        throw DomainError("Delta_" + std::to_string(i) + " does not exist for n=" + std::to_string(n));
    std::size_t minor = ((std::size_t(1) << i) - 1) * (n >> i);
    std::size_t power = n >> (i + 1);
    std::size_t post = ((std::size_t(1) << (i + 1)) - 1) * (n >> (i + 1)) + 1;
    return detail::make_prediction(minor, power, post);
}

/// Content of Adj(Delta_i) computed from a content-free Delta_i:
/// Det(A[0..(2^{i+1}-1)n/2^{i+1}))^{n/2^{i+1}-2}, leaving degree (n-1)d.
/// The size-2 adjugate (i = log2(n)-2) is a cofactor transpose with content 1.
inline ContentPrediction predict_adj_content(std::size_t i, std::size_t n) {
    std::size_t levels = log2_exact(n);
    if (levels < 2 || i > levels - 2)
        throw DomainError("Delta_" + std::to_string(i) + "^adj does not exist for n=" + std::to_string(n));
    std::size_t size = n >> (i + 1);
    if (size <= 2) return detail::make_prediction(0, 0, n - 1);
    std::size_t minor = ((std::size_t(1) << (i + 1)) - 1) * size;
    return detail::make_prediction(minor, size - 2, n - 1);
}

/// Content of the matrix reached by `path` from a root of size n.
///
/// A matrix fresh out of an A11 operation has content 1. A DELTA taken from a
/// node standing for the root window [s, s+t) has content Det(A[0..s))^{t/2}:
/// by Sylvester's identity the node is Det(A[0..s)) times a Schur complement
/// whose entries are (s+1)-minors. This agrees with the pure-spine formula
/// above and with the mixed-case formula for paths that begin with DELTA.
inline ContentPrediction predict_mixed_content(const OpPath& path, std::size_t n) {
    std::size_t levels = log2_exact(n);
    if (path.size() + 1 > levels)
        throw DomainError("path " + path.to_string() + " too long for n=" + std::to_string(n));
    Window self = window_of(path, n);
    if (path.empty() || path.back() == Op::A11) return detail::make_prediction(0, 0, self.start + 1);
    Window parent = window_of(path.parent(), n);
    return detail::make_prediction(parent.start, parent.size / 2, self.start + 1);
}

/// Content of the adjugate of the DELTA node at `delta_path`, when it is
/// covered by the pure-spine law (possibly below leading A11 operations, which
/// just pick a smaller root). Returns nullopt for genuinely mixed paths.
inline std::optional<ContentPrediction> predict_adjugate_content(const OpPath& delta_path, std::size_t n) {
    if (delta_path.empty() || delta_path.back() != Op::Delta)
        throw DomainError("adjugate prediction needs a DELTA-terminated path");
    if (delta_path.is_mixed()) {
        if (window_of(delta_path, n).size <= 2) return detail::make_prediction(0, 0, 0);
        return std::nullopt;
    }
    std::size_t root = n >> delta_path.leading_a11_count();
    auto p = predict_adj_content(delta_path.delta_count() - 1, root);
    p.post_cancel_degree = root - 1;
    return p;
}

/// Det(A[0..minor_size))^power evaluated on the root matrix.
inline Poly predicted_content_poly(const ContentPrediction& p, const PolyMatrix& root) {
    if (p.trivial()) return Poly::constant(root.ring(), 1);
    return principal_minor_det(root, p.minor_size).pow(static_cast<unsigned>(p.power));
}

struct Extraction {
    Poly content;
    std::size_t gcd_count = 0;
    std::size_t entries_visited = 0;
    bool early_stop = false;       // stopped on reaching the expected degree
    bool expected_reached = false; // expected degree given and reached
};

/// Running gcd over the matrix entries. Entries are visited in a seeded
/// shuffled order, except that the first gcd pairs the lowest- and
/// highest-degree entries. With an expected degree the scan stops as soon
/// as the running gcd is down to it; otherwise (or if it is never reached)
/// every entry is visited. A unit running gcd always ends the scan.
inline Extraction extract_content(const PolyMatrix& m, std::optional<std::uint32_t> expected_degree,
                                  std::uint64_t seed) {
    if (m.size() < 2) throw DomainError("matrix content needs size >= 2");
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < m.entries().size(); ++k)
        if (!m.entries()[k].is_zero()) order.push_back(k);
    if (order.empty()) throw ZeroMatrix();

    Rng rng(seed);
    for (std::size_t k = order.size(); k > 1; --k)
        std::swap(order[k - 1], order[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(k) - 1))]);

    auto deg = [&](std::size_t k) { return m.entries()[k].total_degree(); };
    auto lo = std::min_element(order.begin(), order.end(), [&](auto a, auto b) { return deg(a) < deg(b); });
    std::iter_swap(order.begin(), lo);
    if (order.size() > 2) {
        auto hi = std::max_element(order.begin() + 1, order.end(), [&](auto a, auto b) { return deg(a) < deg(b); });
        std::iter_swap(order.begin() + 1, hi);
    }

    Extraction out;
    out.content = normalize(m.entries()[order[0]]);
    out.entries_visited = 1;
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (out.content.is_unit()) break;
        if (expected_degree && out.gcd_count > 0 && out.content.total_degree() <= Degree(*expected_degree)) {
            out.early_stop = true;
            break;
        }
        out.content = poly_gcd(out.content, m.entries()[order[k]]);
        ++out.gcd_count;
        ++out.entries_visited;
    }
    out.expected_reached = expected_degree && out.content.total_degree() <= Degree(*expected_degree);
    return out;
}

struct GcdBudget {
    std::size_t minimum = 0;
    std::size_t worst_case = 0;
};

/// GCD counts for removing content from every cancellable matrix of an
/// inversion of size n: one per cancellable Delta / Delta^adj at least
/// (3n/4 - log2 n - 1), and pairwise over all their entries at worst
/// ((4/3)(2n^2 - 9n + 4)).
inline GcdBudget gcd_budget(std::size_t n) {
    if (n < 8) throw DomainError("gcd budget defined for n >= 8");
    std::size_t levels = log2_exact(n);
    return {3 * n / 4 - levels - 1, 4 * (2 * n * n - 9 * n + 4) / 3};
}

} // namespace polyfrac
