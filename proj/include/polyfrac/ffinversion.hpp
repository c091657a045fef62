#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>

#include "polyfrac/content.hpp"
#include "polyfrac/fastmul.hpp"
#include "polyfrac/oracle.hpp"
#include "polyfrac/profile.hpp"
#include "polyfrac/scaled_matrix.hpp"

namespace polyfrac {

enum class CancelPolicy { None, Theorem, Gcd, Hybrid };

inline std::string_view policy_name(CancelPolicy c) {
    switch (c) {
    case CancelPolicy::None: return "none";
    case CancelPolicy::Theorem: return "theorem";
    case CancelPolicy::Gcd: return "gcd";
    case CancelPolicy::Hybrid: return "hybrid";
    }
    return "?";
}

inline std::string_view pad_name(PadMode m) { return m == PadMode::UpperLeft ? "upper-left" : "lower-right"; }

struct InversionOptions {
    CancelPolicy cancel = CancelPolicy::Hybrid;
    MulConfig mul{};
    PadMode pad = PadMode::UpperLeft;
    std::uint64_t content_seed = 0;
    // Compare each observed content with the predicted minor power. Costs a
    // Bareiss determinant per minor size; off by default.
    bool check_predictions = false;
};

struct FFResult {
    PolyMatrix adj_scaled; // d1 * Adj(A)
    Poly det;              // Det(A)
    DegreeProfile profile;
};

/// a11_det * A22 - A21 * a11_adj * A12
inline PolyMatrix schur_delta(const PolyMatrix& a, const PolyMatrix& a11_adj, const Poly& a11_det,
                              const MulConfig& cfg = {}, MulStats* stats = nullptr) {
    auto q = quadrants(a);
    PolyMatrix::check_compatible(q.a11, a11_adj);
    if (!same_ring(a.ring(), a11_det.ring())) throw RingMismatch();
    return a11_det * q.a22 - mul(mul(q.a21, a11_adj, cfg, stats), q.a12, cfg, stats);
}

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
    return h;
}

inline std::optional<std::uint32_t> mdeg(const PolyMatrix& m) { return degree_or_null(m.max_degree()); }

inline void raise_max(std::optional<std::uint32_t>& acc, const PolyMatrix& m) {
    auto d = mdeg(m);
    if (d && (!acc || *d > *acc)) acc = d;
}

// Exact matrix division that reports where it failed.
inline PolyMatrix div_at(const PolyMatrix& m, const Poly& c, const OpPath& path, const char* what) {
    try {
        return mat_div_exact(m, c);
    } catch (const NotDivisible&) {
        throw NotDivisible(what, path);
    }
}

inline Poly div_at(const Poly& a, const Poly& c, const OpPath& path, const char* what) {
    try {
        return div_exact(a, c);
    } catch (const NotDivisible&) {
        throw NotDivisible(what, path);
    }
}

struct Inverse {
    PolyMatrix adj;
    Poly det;
};

class Inverter {
public:
    Inverter(const PolyMatrix& root, const InversionOptions& opts, DegreeProfile header)
        : root_(root), opts_(opts), recorder_(std::move(header)) {
        auto d = root.max_degree();
        root_d_ = d.is_neg_infinity() ? 0 : d.value();
    }

    std::size_t record(NodeRecord r) { return recorder_.record(std::move(r)); }

    DegreeProfile finish() {
        return recorder_.close({0, stats_.matrix_products, stats_.block_products, stats_.scalar_products});
    }

    std::size_t root_n() const { return root_.size(); }

    // Algorithm 2 with optional content removal. Returns (d1 Adj(M), Det(M));
    // with want_adj false only the determinant is produced.
    Inverse invert(const PolyMatrix& m, const Poly& d1, const OpPath& path, std::size_t rec, bool want_adj) {
        auto t0 = std::chrono::steady_clock::now();
        Inverse out = invert_inner(m, d1, path, rec, want_adj);
        auto dt = std::chrono::steady_clock::now() - t0;
        recorder_.amend(rec, [&](NodeRecord& r) { r.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(dt); });
        return out;
    }

private:
    PolyMatrix mm(const PolyMatrix& a, const PolyMatrix& b) { return mul(a, b, opts_.mul, &stats_); }

    Inverse base_case(const PolyMatrix& m, const Poly& d1, const OpPath& path, bool want_adj) {
        const auto& ring = m.ring();
        NodeRecord r;
        r.path = path;
        r.size = m.size();
        r.kind = NodeKind::Base;
        if (m.size() == 1) {
            PolyMatrix b(ring, 1);
            b(0, 0) = d1;
            r.pre_cancel_degree = r.post_cancel_degree = degree_or_null(b.max_degree());
            record(r);
            return {want_adj ? b : PolyMatrix(ring, 0), m(0, 0)};
        }
        Poly det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        PolyMatrix b(ring, want_adj ? 2 : 0);
        if (want_adj) {
            b(0, 0) = d1 * m(1, 1);
            b(0, 1) = -(d1 * m(0, 1));
            b(1, 0) = -(d1 * m(1, 0));
            b(1, 1) = d1 * m(0, 0);
            r.pre_cancel_degree = r.post_cancel_degree = degree_or_null(b.max_degree());
        }
        record(r);
        return {b, det};
    }

    const Poly& minor_power_base(std::size_t k) {
        auto it = minors_.find(k);
        if (it == minors_.end()) it = minors_.emplace(k, principal_minor_det(root_, k)).first;
        return it->second;
    }

    Poly predicted_poly(const ContentPrediction& p) {
        if (p.trivial()) return Poly::constant(root_.ring(), 1);
        return minor_power_base(p.minor_size).pow(static_cast<unsigned>(p.power));
    }

    struct Cancelled {
        PolyMatrix reduced;
        Poly content;
    };

    // Removes the content of a DELTA matrix or a Delta^adj according to the
    // policy and fills in the content fields of the node record.
    Cancelled cancel(const PolyMatrix& m, std::optional<ContentPrediction> pred, NodeRecord& r) {
        const auto& ring = m.ring();
        Poly one = Poly::constant(ring, 1);
        r.pre_cancel_degree = r.post_cancel_degree = mdeg(m);
        r.prediction = pred;
        if (pred) r.predicted_content_degree = static_cast<std::uint32_t>(pred->predicted_degree * root_d_);
        if (opts_.cancel == CancelPolicy::None || m.size() < 2 || m.is_zero()) return {m, one};

        std::optional<Poly> content;
        if (opts_.cancel == CancelPolicy::Theorem) {
            if (!pred || pred->trivial()) return {m, one};
            content = predicted_poly(*pred);
            r.cancelled = true;
            r.observed_content_degree = degree_or_null(content->total_degree());
            r.predicted_divides_observed = true;
            r.observed_equals_predicted = true;
            PolyMatrix reduced = div_at(m, *content, r.path, "predicted content does not divide");
            r.post_cancel_degree = mdeg(reduced);
            return {std::move(reduced), *content};
        }

        if (opts_.cancel == CancelPolicy::Hybrid && pred && pred->trivial()) return {m, one};

        std::optional<std::uint32_t> expected;
        if (opts_.cancel == CancelPolicy::Hybrid && pred) expected = r.predicted_content_degree;
        std::uint64_t seed = opts_.content_seed ^ fnv1a(std::string(kind_name(r.kind)) + r.path.to_string());
        Extraction ex = extract_content(m, expected, seed);
        r.gcd_invocations += ex.gcd_count;
        r.early_stop = ex.early_stop;
        std::optional<PolyMatrix> reduced;
        if (ex.early_stop) {
            try {
                reduced = mat_div_exact(m, ex.content);
            } catch (const NotDivisible&) {
                // the expected degree was reached by a proper multiple of the content
                ex = extract_content(m, std::nullopt, seed);
                r.gcd_invocations += ex.gcd_count;
                r.fallback_full_scan = true;
            }
        } else if (expected && !ex.expected_reached) {
            r.fallback_full_scan = true;
        }
        r.observed_content_degree = degree_or_null(ex.content.total_degree());
        if (opts_.check_predictions && pred) {
            Poly p = predicted_poly(*pred);
            r.predicted_divides_observed = divides(p, ex.content);
            r.observed_equals_predicted = equal_up_to_unit(p, ex.content);
        }
        if (ex.content.is_unit()) return {m, one};
        if (!reduced) reduced = div_at(m, ex.content, r.path, "extracted content does not divide");
        r.cancelled = true;
        r.post_cancel_degree = mdeg(*reduced);
        return {std::move(*reduced), ex.content};
    }

    Inverse invert_inner(const PolyMatrix& m, const Poly& d1, const OpPath& path, std::size_t rec, bool want_adj) {
        const std::size_t n = m.size();
        if (n <= 2) return base_case(m, d1, path, want_adj);
        const std::size_t h = n / 2;
        const auto& ring = m.ring();
        Poly one = Poly::constant(ring, 1);
        auto q = quadrants(m);
        std::optional<std::uint32_t> arith;

        OpPath pa = path.child(Op::A11);
        NodeRecord ra;
        ra.path = pa;
        ra.size = h;
        ra.kind = NodeKind::A11Block;
        ra.pre_cancel_degree = ra.post_cancel_degree = mdeg(q.a11);
        ra.prediction = predict_mixed_content(pa, root_n());
        ra.predicted_content_degree = 0;
        Inverse x = invert(q.a11, one, pa, record(ra), true);
        if (x.det.is_zero()) throw SingularPivot(pa);
        const Poly& a = x.det;
        raise_max(arith, x.adj);

        PolyMatrix xa12 = mm(x.adj, q.a12);
        PolyMatrix delta = a * q.a22 - mm(q.a21, xa12);
        raise_max(arith, delta);

        OpPath pd = path.child(Op::Delta);
        NodeRecord rd;
        rd.path = pd;
        rd.size = h;
        rd.kind = NodeKind::Delta;
        Cancelled dc = cancel(delta, predict_mixed_content(pd, root_n()), rd);
        std::size_t rd_idx = record(rd);

        Poly det(ring);
        PolyMatrix w(ring, 0);
        if (opts_.cancel == CancelPolicy::None) {
            Inverse y = invert(delta, a, pd, rd_idx, want_adj);
            if (y.det.is_zero()) throw SingularPivot(pd);
            Poly ah1 = a.pow(static_cast<unsigned>(h - 1));
            det = div_at(y.det, ah1, pd, "delta determinant by a11 determinant");
            if (want_adj) {
                w = div_at(y.adj, ah1, pd, "delta adjugate by a11 determinant");
                NodeRecord rj;
                rj.path = pd;
                rj.size = h;
                rj.kind = NodeKind::DeltaAdj;
                rj.pre_cancel_degree = rj.post_cancel_degree = mdeg(w);
                record(rj);
            }
        } else {
            Inverse y = invert(dc.reduced, one, pd, rd_idx, want_adj);
            if (y.det.is_zero()) throw SingularPivot(pd);
            det = div_at(dc.content.pow(static_cast<unsigned>(h)) * y.det, a.pow(static_cast<unsigned>(h - 1)), pd,
                         "determinant from delta");
            if (want_adj) {
                NodeRecord rj;
                rj.path = pd;
                rj.size = h;
                rj.kind = NodeKind::DeltaAdj;
                std::optional<ContentPrediction> pj;
                if (h >= 4) pj = predict_adjugate_content(pd, root_n());
                else pj = ContentPrediction{0, 0, 0, window_of(pd, root_n()).start + h - 1};
                Cancelled yc = h >= 4 ? cancel(y.adj, pj, rj) : Cancelled{y.adj, one};
                if (h < 4) {
                    rj.prediction = pj;
                    rj.predicted_content_degree = 0;
                    rj.pre_cancel_degree = rj.post_cancel_degree = mdeg(y.adj);
                }
                record(rj);
                // Adj(Delta)/a^{h-2} from Adj(Delta/c) = Adj(Delta)/c^{h-1}
                Poly num = dc.content.pow(static_cast<unsigned>(h - 1)) * yc.content;
                Poly den = a.pow(static_cast<unsigned>(h - 2));
                if (auto k = try_divide(num, den)) w = *k * yc.reduced;
                else w = div_at(num * yc.reduced, den, pd, "delta adjugate rescaling");
            }
        }
        if (!want_adj) {
            recorder_.amend(rec, [&](NodeRecord& r) { r.max_arith_degree = arith; });
            return {PolyMatrix(ring, 0), det};
        }
        raise_max(arith, w);

        PolyMatrix lambda = div_at(mm(mm(w, q.a21), x.adj), a, path, "Lambda by a11 determinant");
        raise_max(arith, lambda);
        raise_max(arith, xa12);
        PolyMatrix b11_pre = det * x.adj + mm(xa12, lambda);
        raise_max(arith, b11_pre);
        PolyMatrix b11 = d1 * div_at(b11_pre, a, path, "B11 by a11 determinant");
        PolyMatrix b12 = -(d1 * div_at(mm(xa12, w), a, path, "B12 by a11 determinant"));
        PolyMatrix b21 = -(d1 * lambda);
        PolyMatrix b22 = d1 * w;
        recorder_.amend(rec, [&](NodeRecord& r) { r.max_arith_degree = arith; });
        return {join(b11, b12, b21, b22), det};
    }

    PolyMatrix root_;
    InversionOptions opts_;
    ProfileRecorder recorder_;
    MulStats stats_;
    std::uint32_t root_d_ = 0;
    std::map<std::size_t, Poly> minors_;
};

inline DegreeProfile profile_header(const PolyMatrix& original, const PolyMatrix& root, const InversionOptions& opts,
                                    std::string algorithm) {
    DegreeProfile p;
    p.algorithm = std::move(algorithm);
    p.cancel_policy = policy_name(opts.cancel);
    p.root_n = root.size();
    p.original_n = original.size();
    p.pad_mode = pad_name(opts.pad);
    auto d = root.max_degree();
    p.root_d = d.is_neg_infinity() ? 0 : d.value();
    p.variable_count = root.ring()->size();
    p.mul_cutoff = opts.mul.cutoff;
    p.content_seed = opts.content_seed;
    return p;
}

inline void check_input(const PolyMatrix& a, const Poly& d1) {
    if (a.size() == 0) throw DomainError("empty matrix");
    if (d1.is_zero()) throw DomainError("d1 must be nonzero");
    if (!same_ring(a.ring(), d1.ring())) throw RingMismatch();
}

inline PolyMatrix padded_root(const PolyMatrix& a, PadMode mode) {
    return is_power_of_two(a.size()) ? a : pad(a, mode);
}

inline NodeRecord root_record(const PolyMatrix& root) {
    NodeRecord r;
    r.size = root.size();
    r.kind = NodeKind::Root;
    r.pre_cancel_degree = r.post_cancel_degree = mdeg(root);
    r.prediction = ContentPrediction{0, 0, 0, 1};
    r.predicted_content_degree = 0;
    return r;
}

} // namespace detail

/// Algorithm 2: returns B = d1 Adj(A) and d2 = Det(A). Sizes that are not a
/// power of two are padded with an identity block and trimmed afterwards.
inline FFResult ff_invert_v2(const PolyMatrix& a, const Poly& d1, const InversionOptions& opts = {}) {
    detail::check_input(a, d1);
    PolyMatrix root = detail::padded_root(a, opts.pad);
    detail::Inverter inv(root, opts, detail::profile_header(a, root, opts, "v2"));
    std::size_t rec = inv.record(detail::root_record(root));
    detail::Inverse r = inv.invert(root, d1, {}, rec, true);
    if (r.det.is_zero()) throw SingularPivot({});
    PolyMatrix b = root.size() == a.size() ? std::move(r.adj) : trim_adjugate(r.adj, a.size(), opts.pad);
    return {std::move(b), std::move(r.det), inv.finish()};
}

inline FFResult ff_invert_v2(const PolyMatrix& a, const Poly& d1, CancelPolicy cancel) {
    InversionOptions opts;
    opts.cancel = cancel;
    return ff_invert_v2(a, d1, opts);
}

/// Det(A) by the same recursion, skipping the adjugate blocks on the DELTA side.
inline Poly det_only(const PolyMatrix& a, const InversionOptions& opts = {}) {
    if (a.size() == 0) throw DomainError("empty matrix");
    PolyMatrix root = detail::padded_root(a, opts.pad);
    detail::Inverter inv(root, opts, detail::profile_header(a, root, opts, "det_only"));
    std::size_t rec = inv.record(detail::root_record(root));
    Poly one = Poly::constant(a.ring(), 1);
    detail::Inverse r = inv.invert(root, one, {}, rec, false);
    if (r.det.is_zero()) throw SingularPivot({});
    return r.det;
}

namespace detail {

// Algorithm 1: pairs (matrix, denominator) combined without simplification,
// then divided back to polynomial blocks.
inline Inverse invert_v1(const PolyMatrix& m, const Poly& d1, const OpPath& path, std::size_t self,
                         const MulConfig& cfg, MulStats& stats, ProfileRecorder& rec) {
    const std::size_t n = m.size();
    const auto& ring = m.ring();
    if (n == 1) {
        PolyMatrix b(ring, 1);
        b(0, 0) = d1;
        NodeRecord r;
        r.path = path;
        r.size = 1;
        r.kind = NodeKind::Base;
        r.pre_cancel_degree = r.post_cancel_degree = mdeg(b);
        rec.record(r);
        return {b, m(0, 0)};
    }
    const std::size_t h = n / 2;
    Poly one = Poly::constant(ring, 1);
    auto q = quadrants(m);

    OpPath pa = path.child(Op::A11);
    NodeRecord ra;
    ra.path = pa;
    ra.size = h;
    ra.kind = NodeKind::A11Block;
    ra.pre_cancel_degree = ra.post_cancel_degree = mdeg(q.a11);
    std::size_t ia = rec.record(ra);
    Inverse x = invert_v1(q.a11, one, pa, ia, cfg, stats, rec);
    if (x.det.is_zero()) throw SingularPivot(pa);
    const Poly& a = x.det;

    // Delta' = (a A22 - A21 X A12, a) stands for the Schur complement
    ScaledMatrix a11inv{x.adj, a};
    ScaledMatrix a21{q.a21, one}, a12{q.a12, one}, a22{q.a22, one};
    ScaledMatrix s = pair_add(a22, pair_neg(pair_mul(pair_mul(a21, a11inv, cfg, &stats), a12, cfg, &stats)));
    PolyMatrix delta = s.mat; // the denominator is a
    OpPath pd = path.child(Op::Delta);
    NodeRecord rd;
    rd.path = pd;
    rd.size = h;
    rd.kind = NodeKind::Delta;
    rd.pre_cancel_degree = rd.post_cancel_degree = mdeg(delta);
    std::size_t idd = rec.record(rd);
    Inverse y = invert_v1(delta, a, pd, idd, cfg, stats, rec);
    if (y.det.is_zero()) throw SingularPivot(pd);
    Poly ah1 = a.pow(static_cast<unsigned>(h - 1));
    Poly d2 = div_at(y.det, ah1, pd, "delta determinant by a11 determinant");

    // S^{-1} = (Adj(Delta)/a^{h-2}) / d2 for the Schur complement S = Delta/a
    ScaledMatrix dinv{div_at(y.adj, ah1, pd, "delta adjugate by a11 determinant"), d2};
    ScaledMatrix left = pair_mul(a11inv, a12, cfg, &stats);  // A11^-1 A12
    ScaledMatrix right = pair_mul(a21, a11inv, cfg, &stats); // A21 A11^-1
    ScaledMatrix b12 = pair_neg(pair_mul(left, dinv, cfg, &stats));
    ScaledMatrix b21 = pair_neg(pair_mul(dinv, right, cfg, &stats));
    ScaledMatrix b11 = pair_add(a11inv, pair_mul(pair_mul(left, dinv, cfg, &stats), right, cfg, &stats));
    ScaledMatrix b22 = dinv;

    // A^{-1} blocks times d = d1 d2 are polynomial: B_ij = d * mat_ij / denom_ij
    Poly d = d1 * d2;
    auto finish = [&](const ScaledMatrix& p, const char* what) { return div_at(d * p.mat, p.denom, path, what); };
    PolyMatrix B11 = finish(b11, "b11 denominator"), B12 = finish(b12, "b12 denominator");
    PolyMatrix B21 = finish(b21, "b21 denominator"), B22 = finish(b22, "b22 denominator");
    std::optional<std::uint32_t> arith = mdeg(delta);
    for (const auto* p : {&b11, &b12, &b21, &b22}) raise_max(arith, p->mat);
    rec.amend(self, [&](NodeRecord& r) { r.max_arith_degree = arith; });
    return {join(B11, B12, B21, B22), d2};
}

} // namespace detail

/// Algorithm 1, pair arithmetic taken literally. d2 comes from the same
/// delta_adj / a11_det^{n/2-1} identity as Algorithm 2.
inline FFResult ff_invert_v1(const PolyMatrix& a, const Poly& d1, const InversionOptions& opts = {}) {
    detail::check_input(a, d1);
    PolyMatrix root = detail::padded_root(a, opts.pad);
    InversionOptions o = opts;
    o.cancel = CancelPolicy::None;
    ProfileRecorder rec(detail::profile_header(a, root, o, "v1"));
    NodeRecord rr = detail::root_record(root);
    rr.prediction.reset();
    rr.predicted_content_degree.reset();
    std::size_t ir = rec.record(rr);
    MulStats stats;
    auto t0 = std::chrono::steady_clock::now();
    detail::Inverse r = detail::invert_v1(root, d1, {}, ir, opts.mul, stats, rec);
    auto dt = std::chrono::steady_clock::now() - t0;
    rec.amend(ir, [&](NodeRecord& n) { n.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(dt); });
    if (r.det.is_zero()) throw SingularPivot({});
    PolyMatrix b = root.size() == a.size() ? std::move(r.adj) : trim_adjugate(r.adj, a.size(), opts.pad);
    return {std::move(b), std::move(r.det), rec.close({0, stats.matrix_products, stats.block_products, stats.scalar_products})};
}

} // namespace polyfrac
