// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "polyfrac/cli.hpp"

using namespace polyfrac;

namespace {

constexpr int kSeeds = 10;
constexpr int kSeedQuorum = 9; // criteria 3-5 tolerate one degenerate seed

struct Verdict {
    bool pass = false;
    std::string detail;
};

PolyMatrix gen(std::size_t n, std::size_t m, std::uint32_t d, std::uint64_t seed) {
    GenSpec g;
    g.n = n;
    g.m = m;
    g.d = d;
    g.seed = seed;
    return random_matrix(g);
}

Poly one(const PolyMatrix& a) { return Poly::constant(a.ring(), 1); }

bool inverse_holds(const PolyMatrix& a, const PolyMatrix& b, const Poly& d) {
    PolyMatrix dI = d * PolyMatrix::identity(a.ring(), a.size());
    return mul_naive(a, b) == dI && mul_naive(b, a) == dI;
}

FFResult gcd_run(std::size_t n, std::uint64_t seed) {
    PolyMatrix a = gen(n, 1, 1, seed);
    InversionOptions o;
    o.cancel = CancelPolicy::Gcd;
    o.check_predictions = true;
    return ff_invert_v2(a, one(a), o);
}

const NodeRecord* find(const FFResult& r, NodeKind k, OpPath p) { return r.profile.find(k, std::move(p)); }

// observed content equals the predicted minor power, with the given degrees
bool content_law(const NodeRecord* r, std::uint32_t content_deg, std::optional<std::uint32_t> post_exact,
                 std::optional<std::uint32_t> post_max = std::nullopt) {
    if (!r || !r->observed_equals_predicted || !*r->observed_equals_predicted) return false;
    if (r->observed_content_degree != content_deg) return false;
    if (post_exact && r->post_cancel_degree != *post_exact) return false;
    if (post_max && (!r->post_cancel_degree || *r->post_cancel_degree > *post_max)) return false;
    return true;
}

std::string seeds_list(const std::vector<int>& s) {
    std::string out;
    for (int v : s) out += (out.empty() ? "" : ",") + std::to_string(v);
    return out.empty() ? "none" : out;
}

Verdict ac1() {
    auto t0 = std::chrono::steady_clock::now();
    int total = 0, good = 0;
    std::vector<std::string> bad;
    for (int seed = 1; seed <= kSeeds; ++seed)
        for (std::size_t n : {2, 4, 8})
            for (std::size_t m : {1, 2})
                for (std::uint32_t d : {1u, 2u}) {
                    ++total;
                    PolyMatrix a = gen(n, m, d, seed);
                    try {
                        auto r = ff_invert_v2(a, one(a), CancelPolicy::Hybrid);
                        if (inverse_holds(a, r.adj_scaled, r.det) && r.det == bareiss_det(a)) ++good;
                        else bad.push_back(std::to_string(seed) + "/" + std::to_string(n));
                    } catch (const std::exception& e) {
                        bad.push_back(std::to_string(seed) + "/" + std::to_string(n) + ":" + e.what());
                    }
                }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream s;
    s << good << "/" << total << " exact (A B = B A = d2 I, d2 = Bareiss) in " << secs << "s, budget 300s";
    if (!bad.empty()) s << "; failing seed/n: " << bad.front();
    return {good == total && secs < 300.0, s.str()};
}

Verdict ac2() {
    int v1v2 = 0, policies = 0, total = 0;
    for (int seed = 1; seed <= kSeeds; ++seed)
        for (std::size_t n : {2, 4}) {
            ++total;
            PolyMatrix a = gen(n, 2, 1, seed);
            auto ref = ff_invert_v2(a, one(a), CancelPolicy::Hybrid);
            auto v1 = ff_invert_v1(a, one(a));
            v1v2 += v1.adj_scaled == ref.adj_scaled && v1.det == ref.det;
            bool same = true;
            for (auto pol : {CancelPolicy::None, CancelPolicy::Theorem, CancelPolicy::Gcd}) {
                auto r = ff_invert_v2(a, one(a), pol);
                same = same && r.adj_scaled == ref.adj_scaled && r.det == ref.det;
            }
            policies += same;
        }
    std::ostringstream s;
    s << "v1 == v2 on " << v1v2 << "/" << total << ", all four policies identical on " << policies << "/" << total;
    return {v1v2 == total && policies == total, s.str()};
}

Verdict ac3() {
    using enum Op;
    std::vector<int> bad8, bad16;
    for (int seed = 1; seed <= kSeeds; ++seed) {
        auto r8 = gcd_run(8, seed);
        if (!content_law(find(r8, NodeKind::Delta, {Delta, Delta}), 8, 7)) bad8.push_back(seed);
        auto r16 = gcd_run(16, seed);
        const NodeRecord* d2 = find(r16, NodeKind::Delta, {Delta, Delta, Delta});
        bool ok = content_law(find(r16, NodeKind::Delta, {Delta, Delta}), 32, 13) && d2 &&
                  d2->post_cancel_degree == 15u && d2->observed_equals_predicted.value_or(false);
        if (!ok) bad16.push_back(seed);
    }
    int good8 = kSeeds - static_cast<int>(bad8.size()), good16 = kSeeds - static_cast<int>(bad16.size());
    std::ostringstream s;
    s << "n=8 Delta_1 content D4^2 (deg 8), post 7: " << good8 << "/" << kSeeds << "; n=16 Delta_1 content D8^4 (deg 32), post 13, Delta_2 post 15: "
      << good16 << "/" << kSeeds << "; degenerate seeds n=8 " << seeds_list(bad8) << ", n=16 " << seeds_list(bad16);
    return {good8 >= kSeedQuorum && good16 >= kSeedQuorum, s.str()};
}

Verdict ac4() {
    std::vector<int> bad;
    for (int seed = 1; seed <= kSeeds; ++seed) {
        auto r = gcd_run(16, seed);
        const NodeRecord* d0 = find(r, NodeKind::Delta, {Op::Delta});
        bool content_free = d0 && !d0->cancelled;
        if (!content_free || !content_law(find(r, NodeKind::DeltaAdj, {Op::Delta}), 48, 15)) bad.push_back(seed);
    }
    int good = kSeeds - static_cast<int>(bad.size());
    std::ostringstream s;
    s << "n=16 Adj(Delta_0) content D8^6 (deg 48), post 15: " << good << "/" << kSeeds << "; degenerate seeds "
      << seeds_list(bad);
    return {good >= kSeedQuorum, s.str()};
}

Verdict ac5() {
    using enum Op;
    std::vector<int> bad;
    std::vector<std::uint32_t> pre;
    for (int seed = 1; seed <= kSeeds; ++seed) {
        auto r = gcd_run(16, seed);
        const NodeRecord* m = find(r, NodeKind::Delta, {Delta, A11, Delta});
        if (m && m->pre_cancel_degree) pre.push_back(*m->pre_cancel_degree);
        if (!content_law(m, 16, std::nullopt, 29)) bad.push_back(seed);
    }
    int good = kSeeds - static_cast<int>(bad.size());
    int at27 = 0, at45 = 0;
    for (auto d : pre) at27 += d == 27, at45 += d == 45;
    std::ostringstream s;
    s << "n=16 [DELTA,A11,DELTA] content D8^2 (deg 16), post <= 29: " << good << "/" << kSeeds
      << "; pre-cancel degree measured 27 on " << at27 << " seeds, 45 on " << at45
      << " seeds (recurrence value 27, alternative closed form 45; measurement only)";
    return {good >= kSeedQuorum, s.str()};
}

Verdict ac6() {
    std::ostringstream s;
    bool ok = true;
    for (std::size_t n : {8, 16}) {
        PolyMatrix a = gen(n, 1, 1, 1);
        auto r = ff_invert_v2(a, one(a), CancelPolicy::Hybrid);
        GcdReport g = gcd_report(r.profile);
        bool this_ok = g.budget && g.total_gcd >= g.budget->minimum && g.census_matches;
        if (n == 16) this_ok = this_ok && g.budget->worst_case == 496;
        ok = ok && this_ok;
        if (n == 16) s << "; ";
        s << "n=" << n << ": " << g.total_gcd << " gcds (minimum " << (g.budget ? g.budget->minimum : 0)
          << ", worst case " << (g.budget ? g.budget->worst_case : 0) << "), census "
          << (g.census_matches ? "matches" : "differs");
    }
    return {ok, s.str()};
}

Verdict ac7() {
    int equal = 0, total = 0;
    for (int seed = 1; seed <= kSeeds; ++seed)
        for (std::size_t n : {2, 4, 8}) {
            ++total;
            PolyMatrix a = gen(n, 2, 1, seed), b = gen(n, 2, 1, seed + 1000);
            equal += mul(a, b, {1, MulVariant::StrassenWinograd}) == mul_naive(a, b);
        }
    bool counts = true;
    std::ostringstream s;
    s << "SW == naive on " << equal << "/" << total << "; scalar products at cutoff 1:";
    std::uint64_t p7 = 1, p8 = 1;
    for (std::size_t k = 1; k <= 3; ++k) {
        p7 *= 7, p8 *= 8;
        PolyMatrix a = gen(std::size_t(1) << k, 2, 1, 1), b = gen(std::size_t(1) << k, 2, 1, 2);
        MulStats fast, slow;
        mul(a, b, {1, MulVariant::StrassenWinograd}, &fast);
        mul(a, b, {1, MulVariant::NaiveOnly}, &slow);
        counts = counts && fast.scalar_products == p7 && slow.scalar_products == p8;
        s << " n=" << (1 << k) << " " << fast.scalar_products << " vs " << slow.scalar_products;
    }
    return {equal == total && counts, s.str()};
}

Verdict ac8() {
    int good = 0;
    for (int seed = 1; seed <= kSeeds; ++seed) {
        PolyMatrix a = gen(5, 1, 1, seed);
        InversionOptions up, low;
        low.pad = PadMode::LowerRight;
        auto r1 = ff_invert_v2(a, one(a), up);
        auto r2 = ff_invert_v2(a, one(a), low);
        Poly d = bareiss_det(a);
        bool ok = r1.adj_scaled == r2.adj_scaled && r1.det == r2.det && r1.det == d &&
                  bareiss_det(pad(a, 8, PadMode::UpperLeft)) == d && bareiss_det(pad(a, 8, PadMode::LowerRight)) == d &&
                  inverse_holds(a, r1.adj_scaled, r1.det);
        good += ok;
    }
    std::ostringstream s;
    s << "5x5 padded to 8, both modes identical, det preserved, A Adj(A) = det I: " << good << "/" << kSeeds;
    return {good == kSeeds, s.str()};
}

Verdict ac9() {
    int good = 0;
    for (int seed = 1; seed <= kSeeds; ++seed) {
        PolyMatrix a = gen(4, 1, 1, seed);
        Poly c = Poly::variable(a.ring(), 0) + Poly::constant(a.ring(), 1);
        auto base = ff_invert_v2(a, one(a));
        auto scaled = ff_invert_v2(c * a, one(a));
        good += scaled.adj_scaled == c.pow(3) * base.adj_scaled && scaled.det == c.pow(4) * base.det;
    }
    std::ostringstream s;
    s << "Adj((x+1)A) = (x+1)^3 Adj(A), det = (x+1)^4 det(A): " << good << "/" << kSeeds;
    return {good == kSeeds, s.str()};
}

Verdict ac10() {
    bool same = true;
    for (std::size_t n : {8, 16}) {
        cli::RunConfig cfg;
        cfg.command = "profile";
        cfg.gen.n = n;
        cfg.gen.seed = 1;
        same = same && cli::cmd_profile(cfg).dump(2) == cli::cmd_profile(cfg).dump(2);
    }
    return {same, same ? "repeated profile runs (n=8, n=16, seed 1) byte-identical" : "profile output differs between runs"};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Verdict()> run;
    };
    std::vector<Criterion> criteria{{"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
                                    {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}};
    int failed = 0;
    for (const auto& c : criteria) {
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("%-4s %s  %s\n", c.name, v.pass ? "PASS" : "FAIL", v.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
