#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyfrac/content.hpp"
#include "polyfrac/op_path.hpp"

namespace polyfrac {

// ROOT, A11_BLOCK and DELTA records are formed matrices, one per node of the
// recursion tree. DELTA_ADJ and BASE are events inside a node: the adjugate
// returned for a Schur complement, and a closed-form base case.
enum class NodeKind { Root, A11Block, Delta, DeltaAdj, Base };

inline std::string_view kind_name(NodeKind k) {
    switch (k) {
    case NodeKind::Root: return "ROOT";
    case NodeKind::A11Block: return "A11_BLOCK";
    case NodeKind::Delta: return "DELTA";
    case NodeKind::DeltaAdj: return "DELTA_ADJ";
    case NodeKind::Base: return "BASE";
    }
    return "?";
}

inline std::optional<std::uint32_t> degree_or_null(const Degree& d) {
    if (d.is_neg_infinity()) return std::nullopt;
    return d.value();
}

struct NodeRecord {
    OpPath path;
    std::size_t size = 0;
    NodeKind kind = NodeKind::Base;
    std::optional<std::uint32_t> pre_cancel_degree; // nullopt for the zero matrix
    std::optional<ContentPrediction> prediction;
    std::optional<std::uint32_t> predicted_content_degree;
    std::optional<std::uint32_t> observed_content_degree;
    std::optional<std::uint32_t> post_cancel_degree;
    std::size_t gcd_invocations = 0;
    bool cancelled = false;
    bool early_stop = false;
    bool fallback_full_scan = false;
    std::optional<bool> predicted_divides_observed;
    std::optional<bool> observed_equals_predicted;
    std::optional<std::uint32_t> max_arith_degree; // largest intermediate formed while inverting this node
    std::chrono::nanoseconds wall_time{0};
};

struct ProfileTotals {
    std::size_t gcd_count = 0;
    std::uint64_t mul_count = 0;      // top-level matrix products
    std::uint64_t block_products = 0; // half-size products issued by Strassen-Winograd
    std::uint64_t scalar_products = 0;
};

struct DegreeProfile {
    std::string algorithm;
    std::string cancel_policy;
    std::size_t root_n = 0;
    std::size_t original_n = 0;
    std::string pad_mode;
    std::uint32_t root_d = 0;
    std::size_t variable_count = 0;
    std::size_t mul_cutoff = 0;
    std::uint64_t content_seed = 0;
    std::vector<NodeRecord> nodes;
    ProfileTotals totals;

    [[nodiscard]] bool padded() const { return original_n != root_n; }

    [[nodiscard]] const NodeRecord* find(NodeKind kind, const OpPath& path) const {
        for (const auto& r : nodes)
            if (r.kind == kind && r.path == path) return &r;
        return nullptr;
    }
};

/// Append-only sink. Records are kept in depth-first visit order; a record
/// can be amended through its index until the recorder is closed.
class ProfileRecorder {
public:
    explicit ProfileRecorder(DegreeProfile header) : profile_(std::move(header)) {}

    std::size_t record(NodeRecord r) {
        std::lock_guard lock(mu_);
        profile_.totals.gcd_count += r.gcd_invocations;
        profile_.nodes.push_back(std::move(r));
        return profile_.nodes.size() - 1;
    }

    void amend(std::size_t index, const std::function<void(NodeRecord&)>& fn) {
        std::lock_guard lock(mu_);
        std::size_t before = profile_.nodes.at(index).gcd_invocations;
        fn(profile_.nodes[index]);
        profile_.totals.gcd_count += profile_.nodes[index].gcd_invocations - before;
    }

    DegreeProfile close(const ProfileTotals& mul_totals) {
        std::lock_guard lock(mu_);
        profile_.totals.mul_count = mul_totals.mul_count;
        profile_.totals.block_products = mul_totals.block_products;
        profile_.totals.scalar_products = mul_totals.scalar_products;
        return std::move(profile_);
    }

private:
    std::mutex mu_;
    DegreeProfile profile_;
};

struct LawCheck {
    std::string law;
    OpPath path;
    NodeKind kind = NodeKind::Delta;
    std::string relation; // "==" or "<="
    std::int64_t expected = 0;
    std::optional<std::uint32_t> observed;
    bool passed = false;
    bool hard = true; // false: warning only
};

namespace detail {

inline LawCheck make_check(std::string law, const NodeRecord& r, std::string relation, std::int64_t expected,
                           std::optional<std::uint32_t> observed, bool hard) {
    LawCheck c{std::move(law), r.path, r.kind, std::move(relation), expected, observed, false, hard};
    if (!observed) c.passed = true; // zero matrix: degree -inf satisfies any bound
    else if (c.relation == "==") c.passed = static_cast<std::int64_t>(*observed) == expected;
    else c.passed = static_cast<std::int64_t>(*observed) <= expected;
    return c;
}

} // namespace detail

inline constexpr std::int64_t kTopLevelDegreeFactor = 2;

/// Degree-growth checks. Without cancellation the pure-DELTA spine must hit
/// d * prod_{j<=k} (n/2^{j+1} + 1) exactly. With cancellation every DELTA must
/// be within its post-cancellation bound and every pure Delta^adj within
/// (n-1)d. Padded inputs are not uniform in degree, so on them the checks
/// become upper-bound warnings.
inline std::vector<LawCheck> check_degree_laws(const DegreeProfile& p) {
    std::vector<LawCheck> out;
    const auto n = static_cast<std::int64_t>(p.root_n);
    const auto d = static_cast<std::int64_t>(p.root_d);
    const bool uniform = !p.padded();
    for (const auto& r : p.nodes) {
        if (r.kind == NodeKind::Root && r.max_arith_degree) {
            out.push_back(detail::make_check("top_level_intermediate_degree", r, "<=", kTopLevelDegreeFactor * n * d,
                                             r.max_arith_degree, uniform));
        }
        if (r.kind == NodeKind::Delta && p.cancel_policy == "none" && r.path.all_delta()) {
            std::int64_t expected = d;
            for (std::size_t j = 0; j < r.path.size(); ++j) expected *= (n >> (j + 1)) + 1;
            out.push_back(detail::make_check("delta_spine_degree_uncancelled", r, uniform ? "==" : "<=", expected,
                                             r.pre_cancel_degree, uniform));
        }
        if (p.cancel_policy == "none") continue;
        if (r.kind == NodeKind::Delta && r.prediction) {
            auto expected = static_cast<std::int64_t>(r.prediction->post_cancel_degree) * d;
            out.push_back(detail::make_check("delta_post_cancel_degree", r, "<=", expected, r.post_cancel_degree,
                                             uniform && !r.path.is_mixed()));
        }
        if (r.kind == NodeKind::DeltaAdj && r.size >= 4) {
            std::int64_t root = n >> r.path.leading_a11_count();
            out.push_back(detail::make_check("delta_adj_post_cancel_degree", r, "<=", (root - 1) * d,
                                             r.post_cancel_degree, uniform && !r.path.is_mixed()));
        }
    }
    return out;
}

inline bool all_hard_checks_pass(const std::vector<LawCheck>& checks) {
    for (const auto& c : checks)
        if (c.hard && !c.passed) return false;
    return true;
}

struct CensusLevel {
    std::size_t level = 0;
    std::size_t delta_observed = 0;
    std::size_t delta_expected = 0;
    std::size_t adj_observed = 0;
    std::optional<std::size_t> adj_expected; // levels past the Thm-6 range have none
};

struct GcdReport {
    std::size_t total_gcd = 0;
    std::optional<GcdBudget> budget; // defined for n >= 8
    bool meets_minimum = false;
    std::size_t cancelled_nodes = 0;
    std::vector<CensusLevel> census;
    bool census_matches = false;
};

/// Totals and the census of cancelled nodes per recursion level: a level-i
/// pass has 2^{i-1}-1 DELTA nodes and 2^{i-1} adjugates of size >= 4 that
/// carry systematic content.
inline GcdReport gcd_report(const DegreeProfile& p) {
    GcdReport g;
    g.total_gcd = p.totals.gcd_count;
    std::size_t levels = is_power_of_two(p.root_n) ? log2_exact(p.root_n) : 0;
    if (p.root_n >= 8) g.budget = gcd_budget(p.root_n);
    for (std::size_t i = 1; i + 1 <= levels; ++i) {
        CensusLevel c;
        c.level = i;
        c.delta_expected = (std::size_t(1) << (i - 1)) - 1;
        if (i + 2 <= levels) c.adj_expected = std::size_t(1) << (i - 1);
        for (const auto& r : p.nodes) {
            if (!r.cancelled || r.path.size() != i) continue;
            if (r.kind == NodeKind::Delta) ++c.delta_observed;
            if (r.kind == NodeKind::DeltaAdj && r.size >= 4) ++c.adj_observed;
        }
        g.census.push_back(c);
    }
    for (const auto& r : p.nodes) g.cancelled_nodes += r.cancelled;
    g.meets_minimum = g.budget && g.total_gcd >= g.budget->minimum;
    g.census_matches = !g.census.empty();
    for (const auto& c : g.census)
        g.census_matches = g.census_matches && c.delta_observed == c.delta_expected &&
                           c.adj_observed == c.adj_expected.value_or(0);
    return g;
}

// JSON rendering, with a fixed key order so runs can be diffed byte for byte.
using json = nlohmann::ordered_json;

namespace detail {

template <class T> json opt(const std::optional<T>& v) { return v ? json(*v) : json(nullptr); }

} // namespace detail

inline json to_json(const ContentPrediction& p) {
    return json{{"minor_size", p.minor_size}, {"power", p.power}, {"predicted_degree", p.predicted_degree}};
}

inline json to_json(const NodeRecord& r, bool timings) {
    json j;
    j["path"] = r.path.to_string();
    j["kind"] = kind_name(r.kind);
    j["size"] = r.size;
    j["pre_cancel_degree"] = detail::opt(r.pre_cancel_degree);
    j["prediction"] = r.prediction ? to_json(*r.prediction) : json(nullptr);
    j["predicted_content_degree"] = detail::opt(r.predicted_content_degree);
    j["observed_content_degree"] = detail::opt(r.observed_content_degree);
    j["post_cancel_degree"] = detail::opt(r.post_cancel_degree);
    j["gcd_invocations"] = r.gcd_invocations;
    j["cancelled"] = r.cancelled;
    j["early_stop"] = r.early_stop;
    j["fallback_full_scan"] = r.fallback_full_scan;
    j["predicted_divides_observed"] = detail::opt(r.predicted_divides_observed);
    j["observed_equals_predicted"] = detail::opt(r.observed_equals_predicted);
    j["max_arith_degree"] = detail::opt(r.max_arith_degree);
    if (timings) j["wall_time_ns"] = r.wall_time.count();
    return j;
}

inline json to_json(const LawCheck& c) {
    return json{{"law", c.law},         {"path", c.path.to_string()}, {"kind", kind_name(c.kind)},
                {"relation", c.relation}, {"expected", c.expected},     {"observed", detail::opt(c.observed)},
                {"passed", c.passed},   {"hard", c.hard}};
}

inline json to_json(const GcdReport& g) {
    json j;
    j["total_gcd"] = g.total_gcd;
    j["minimum"] = g.budget ? json(g.budget->minimum) : json(nullptr);
    j["worst_case"] = g.budget ? json(g.budget->worst_case) : json(nullptr);
    j["meets_minimum"] = g.meets_minimum;
    j["cancelled_nodes"] = g.cancelled_nodes;
    json census = json::array();
    for (const auto& c : g.census)
        census.push_back(json{{"level", c.level},
                              {"delta_observed", c.delta_observed},
                              {"delta_expected", c.delta_expected},
                              {"adj_observed", c.adj_observed},
                              {"adj_expected", detail::opt(c.adj_expected)}});
    j["census"] = census;
    j["census_matches"] = g.census_matches;
    return j;
}

inline json config_json(const DegreeProfile& p) {
    return json{{"algorithm", p.algorithm},       {"cancel_policy", p.cancel_policy}, {"root_n", p.root_n},
                {"original_n", p.original_n},     {"pad", p.pad_mode},                {"root_d", p.root_d},
                {"variable_count", p.variable_count}, {"mul_cutoff", p.mul_cutoff},   {"content_seed", p.content_seed}};
}

/// {"config", "nodes", "totals", "law_checks", "gcd_report"}
inline json profile_json(const DegreeProfile& p, bool timings = false) {
    json j;
    j["config"] = config_json(p);
    json nodes = json::array();
    for (const auto& r : p.nodes) nodes.push_back(to_json(r, timings));
    j["nodes"] = nodes;
    j["totals"] = json{{"gcd_count", p.totals.gcd_count},
                       {"mul_count", p.totals.mul_count},
                       {"block_products", p.totals.block_products},
                       {"scalar_products", p.totals.scalar_products}};
    json checks = json::array();
    for (const auto& c : check_degree_laws(p)) checks.push_back(to_json(c));
    j["law_checks"] = checks;
    j["gcd_report"] = to_json(gcd_report(p));
    return j;
}

} // namespace polyfrac
