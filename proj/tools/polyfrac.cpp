#include <CLI11.hpp>

#include "polyfrac/cli.hpp"

namespace {

void add_common(CLI::App* sub, polyfrac::cli::RunConfig& cfg, std::string& cancel, std::string& pad) {
    sub->add_option("--input", cfg.input, "matrix JSON file (otherwise a generated matrix)");
    sub->add_option("-n", cfg.gen.n, "generated matrix size");
    sub->add_option("-m", cfg.gen.m, "number of variables");
    sub->add_option("-d", cfg.gen.d, "entry degree");
    sub->add_option("--coeff-bound", cfg.gen.coeff_bound, "coefficients drawn from [-B, B] \\ {0}");
    sub->add_option("--seed", cfg.gen.seed, "generator and content-order seed (POLYFRAC_SEED overrides)");
    sub->add_option("--cancel", cancel, "content cancellation: none, theorem, gcd, hybrid");
    sub->add_option("--cutoff", cfg.cutoff, "sizes <= cutoff multiply naively");
    sub->add_option("--pad", pad, "padding for non-binary sizes: upper-left, lower-right");
    sub->add_option("--output", cfg.output, "write JSON here instead of stdout");
    sub->add_flag("--verify", cfg.verify, "check the result against the oracles");
    sub->add_flag("--timings", cfg.timings, "include per-node wall times in the profile");
    sub->add_option("--algorithm", cfg.algorithm, "v1 or v2");
}

} // namespace

int main(int argc, char** argv) {
    namespace pc = polyfrac::cli;
    pc::RunConfig cfg;
    std::string cancel = "hybrid", pad = "upper-left";

    CLI::App app{"Fraction-free Strassen inversion of polynomial matrices"};
    app.require_subcommand(1);
    struct Cmd {
        const char* name;
        const char* help;
    };
    for (auto c : {Cmd{"gen", "generate a random matrix"}, Cmd{"invert", "adjugate and determinant"},
                   Cmd{"det", "determinant only"}, Cmd{"mul", "Strassen-Winograd product of --input and --rhs"},
                   Cmd{"profile", "degree and content profile of an inversion"},
                   Cmd{"verify", "invert and check against the oracles"}}) {
        auto* sub = app.add_subcommand(c.name, c.help);
        add_common(sub, cfg, cancel, pad);
        if (std::string(c.name) == "mul") sub->add_option("--rhs", cfg.rhs, "right operand matrix JSON file");
        sub->callback([&cfg, name = std::string(c.name)] { cfg.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return pc::kInputError;
    }

    pc::Outcome out;
    try {
        pc::apply_seed_env(cfg);
        cfg.cancel = pc::parse_policy(cancel);
        cfg.pad = pc::parse_pad(pad);
        out = pc::run(cfg);
    } catch (const polyfrac::ParseError& e) {
        out = {pc::json{{"error", "input"}, {"message", e.what()}}, pc::kInputError};
    }
    if (out.result.contains("error")) {
        std::cerr << out.result.dump(2) << "\n";
        return out.exit_code;
    }
    try {
        pc::write_output(out.result, cfg.output);
    } catch (const polyfrac::ParseError& e) {
        std::cerr << e.what() << "\n";
        return pc::kInputError;
    }
    return out.exit_code;
}
