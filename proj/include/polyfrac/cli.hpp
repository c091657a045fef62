#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "polyfrac/ffinversion.hpp"
#include "polyfrac/matrix_json.hpp"

namespace polyfrac::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kFailure = 1, kSingular = 2, kInputError = 3, kNotDivisible = 4 };

struct RunConfig {
    std::string command;
    std::optional<std::string> input;
    std::optional<std::string> rhs; // second operand for mul
    GenSpec gen;
    CancelPolicy cancel = CancelPolicy::Hybrid;
    std::size_t cutoff = 2;
    PadMode pad = PadMode::UpperLeft;
    std::optional<std::string> output;
    bool verify = false;
    bool timings = false;
    std::string algorithm = "v2";
};

inline CancelPolicy parse_policy(const std::string& s) {
    if (s == "none") return CancelPolicy::None;
    if (s == "theorem") return CancelPolicy::Theorem;
    if (s == "gcd") return CancelPolicy::Gcd;
    if (s == "hybrid") return CancelPolicy::Hybrid;
    throw ParseError("unknown cancel policy '" + s + "'");
}

inline PadMode parse_pad(const std::string& s) {
    if (s == "upper-left") return PadMode::UpperLeft;
    if (s == "lower-right") return PadMode::LowerRight;
    throw ParseError("unknown pad mode '" + s + "'");
}

/// POLYFRAC_SEED, when set, replaces the generator seed.
inline void apply_seed_env(RunConfig& cfg) {
    const char* env = std::getenv("POLYFRAC_SEED");
    if (!env || !*env) return;
    try {
        std::size_t used = 0;
        cfg.gen.seed = std::stoull(env, &used);
        if (env[used] != '\0') throw std::invalid_argument(env);
    } catch (const std::exception&) {
        throw ParseError(std::string("POLYFRAC_SEED is not an unsigned integer: ") + env);
    }
}

inline void check_spec(const GenSpec& g) {
    if (g.n < 1) throw ParseError("n must be >= 1");
    if (g.m < 1 || g.m > 7) throw ParseError("m must be in 1..7");
    if (g.coeff_bound < 1) throw ParseError("coeff-bound must be >= 1");
}

inline json gen_json(const GenSpec& g) {
    return json{{"n", g.n}, {"m", g.m}, {"d", g.d}, {"coeff_bound", g.coeff_bound}, {"seed", g.seed}};
}

inline PolyMatrix load_input(const RunConfig& cfg) {
    if (cfg.input) return read_matrix_file(*cfg.input);
    check_spec(cfg.gen);
    return random_matrix(cfg.gen);
}

inline InversionOptions options_of(const RunConfig& cfg) {
    InversionOptions o;
    o.cancel = cfg.cancel;
    o.mul.cutoff = cfg.cutoff;
    o.pad = cfg.pad;
    o.content_seed = cfg.gen.seed;
    return o;
}

inline json source_json(const RunConfig& cfg) {
    if (cfg.input) return json{{"file", *cfg.input}};
    return json{{"generator", gen_json(cfg.gen)}};
}

inline FFResult invert_with(const PolyMatrix& a, const RunConfig& cfg) {
    Poly one = Poly::constant(a.ring(), 1);
    if (cfg.algorithm == "v1") return ff_invert_v1(a, one, options_of(cfg));
    if (cfg.algorithm == "v2") return ff_invert_v2(a, one, options_of(cfg));
    throw ParseError("unknown algorithm '" + cfg.algorithm + "'");
}

struct Verification {
    bool right = false; // A B = d I
    bool left = false;  // B A = d I
    bool det = false;   // d = Bareiss determinant
    std::optional<bool> cofactor; // B = cofactor adjugate, small sizes only
    [[nodiscard]] bool ok() const { return right && left && det && cofactor.value_or(true); }
};

inline Verification verify_inverse(const PolyMatrix& a, const PolyMatrix& b, const Poly& d) {
    Verification v;
    PolyMatrix dI = d * PolyMatrix::identity(a.ring(), a.size());
    v.right = mul_naive(a, b) == dI;
    v.left = mul_naive(b, a) == dI;
    v.det = bareiss_det(a) == d;
    if (a.size() <= kCofactorOracleMaxSize) v.cofactor = cofactor_adjugate(a) == b;
    return v;
}

inline json verification_json(const Verification& v) {
    json j{{"a_times_b", v.right}, {"b_times_a", v.left}, {"det_matches_bareiss", v.det}};
    j["adjugate_matches_cofactor"] = v.cofactor ? json(*v.cofactor) : json(nullptr);
    j["verified"] = v.ok();
    return j;
}

inline json cmd_gen(const GenSpec& spec) {
    check_spec(spec);
    return matrix_to_json(random_matrix(spec));
}

inline json cmd_invert(const RunConfig& cfg) {
    PolyMatrix a = load_input(cfg);
    FFResult r = invert_with(a, cfg);
    json out;
    out["source"] = source_json(cfg);
    out["adjugate"] = matrix_to_json(r.adj_scaled);
    out["det"] = to_string(r.det);
    out["profile"] = profile_json(r.profile, cfg.timings);
    if (cfg.verify) {
        Verification v = verify_inverse(a, r.adj_scaled, r.det);
        out["verification"] = verification_json(v);
        out["verified"] = v.ok();
    }
    return out;
}

inline json cmd_det(const RunConfig& cfg) {
    PolyMatrix a = load_input(cfg);
    Poly d = det_only(a, options_of(cfg));
    json out{{"source", source_json(cfg)}, {"det", to_string(d)}};
    if (cfg.verify) out["verified"] = bareiss_det(a) == d;
    return out;
}

inline json cmd_mul(const RunConfig& cfg) {
    PolyMatrix a = load_input(cfg);
    PolyMatrix b(a.ring(), 0);
    if (cfg.rhs) {
        b = read_matrix_file(*cfg.rhs);
    } else {
        if (cfg.input) throw ParseError("mul with --input also needs --rhs");
        GenSpec g = cfg.gen;
        g.seed += 1;
        b = random_matrix(g);
    }
    if (!same_ring(a.ring(), b.ring())) throw ParseError("operands use different variables");
    if (a.size() != b.size()) throw ParseError("operands differ in size");
    MulStats stats;
    PolyMatrix c = mul(a, b, {cfg.cutoff, MulVariant::StrassenWinograd}, &stats);
    json out{{"product", matrix_to_json(c)},
             {"stats", {{"scalar_products", stats.scalar_products}, {"block_products", stats.block_products}}}};
    if (cfg.verify) out["verified"] = mul_naive(a, b) == c;
    return out;
}

inline json cmd_profile(const RunConfig& cfg) {
    PolyMatrix a = load_input(cfg);
    FFResult r = invert_with(a, cfg);
    json out;
    out["source"] = source_json(cfg);
    json prof = profile_json(r.profile, cfg.timings);
    for (auto& [k, v] : prof.items()) out[k] = v;
    return out;
}

inline json cmd_verify(const RunConfig& cfg) {
    PolyMatrix a = load_input(cfg);
    FFResult r = invert_with(a, cfg);
    Verification v = verify_inverse(a, r.adj_scaled, r.det);
    json out{{"source", source_json(cfg)}};
    out["checks"] = verification_json(v);
    out["det_only_matches"] = det_only(a, options_of(cfg)) == r.det;
    out["law_checks_pass"] = all_hard_checks_pass(check_degree_laws(r.profile));
    out["verified"] = v.ok() && out["det_only_matches"].get<bool>();
    return out;
}

struct Outcome {
    json result;
    int exit_code = kOk;
};

/// Runs one command and maps failures to exit codes; errors are reported as
/// {"error": kind, "message": ..., "path": ...}.
inline Outcome run(const RunConfig& cfg) {
    auto fail = [](int code, std::string kind, const std::string& msg, const OpPath* path = nullptr) {
        json e{{"error", std::move(kind)}, {"message", msg}};
        if (path) e["path"] = path->to_string();
        return Outcome{e, code};
    };
    try {
        json out;
        if (cfg.command == "gen") out = cmd_gen(cfg.gen);
        else if (cfg.command == "invert") out = cmd_invert(cfg);
        else if (cfg.command == "det") out = cmd_det(cfg);
        else if (cfg.command == "mul") out = cmd_mul(cfg);
        else if (cfg.command == "profile") out = cmd_profile(cfg);
        else if (cfg.command == "verify") out = cmd_verify(cfg);
        else throw ParseError("unknown command '" + cfg.command + "'");
        int code = kOk;
        if (out.contains("verified") && !out["verified"].get<bool>()) code = kFailure;
        return {out, code};
    } catch (const SingularPivot& e) {
        return fail(kSingular, "singular", e.what(), &e.path);
    } catch (const NotDivisible& e) {
        return fail(kNotDivisible, "not_divisible", e.what(), &e.path);
    } catch (const ParseError& e) {
        return fail(kInputError, "input", e.what());
    } catch (const RingMismatch& e) {
        return fail(kInputError, "input", e.what());
    } catch (const SizeMismatch& e) {
        return fail(kInputError, "input", e.what());
    } catch (const std::exception& e) {
        return fail(kFailure, "internal", e.what());
    }
}

inline void write_output(const json& j, const std::optional<std::string>& path) {
    std::string text = j.dump(2) + "\n";
    if (!path) {
        std::cout << text;
        return;
    }
    std::ofstream out(*path);
    if (!out) throw ParseError("cannot write " + *path);
    out << text;
}

} // namespace polyfrac::cli
