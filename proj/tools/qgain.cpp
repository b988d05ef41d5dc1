// qgain command-line tool: entropy, portrait, decompose, sweep, verify.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qgain/cli.hpp"

namespace {

std::optional<std::vector<double>> grid_or_exit(const std::string& spec, int& code) {
    try {
        return qgain::parse_gamma_grid(spec);
    } catch (const qgain::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        code = qgain::cli::kInvalid;
        return std::nullopt;
    }
}

} // namespace

int main(int argc, char** argv) {
    namespace cli = qgain::cli;

    CLI::App app{"Entropy gain of qutrit states embedded as two-mode states under amplitude damping"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<double> tol;
    std::uint64_t seed = 42;
    app.add_option("--tol", tol, "tolerance (decompose/sweep: form conditions, default 1e-9; verify: slack floor, default 1e-8)");
    app.add_option("--seed", seed, "seed for random decomposable states")->capture_default_str();

    std::string input;
    auto* entropy = app.add_subcommand("entropy", "von Neumann entropy (nats) of a density matrix file");
    entropy->add_option("file", input, "matrix file")->required();

    auto* portrait = app.add_subcommand("portrait", "qubit portrait of a qutrit density matrix file");
    portrait->add_option("file", input, "matrix file (dim 3)")->required();

    auto* decompose = app.add_subcommand("decompose", "check the form conditions and extract (alpha, h1, h2)");
    decompose->add_option("file", input, "matrix file (dim 4)")->required();

    std::string grid_spec = "0:1:0.1";
    std::optional<std::string> csv_path;
    auto* sweep = app.add_subcommand("sweep", "gamma sweep of both sides of the bound, written as CSV");
    sweep->add_option("file", input, "matrix file (dim 3 or 4); a seeded random state when omitted");
    sweep->add_option("--gamma-grid", grid_spec, "start:end:step or a comma-separated list")->capture_default_str();
    sweep->add_option("--out", csv_path, "CSV output path (standard output when omitted)");

    std::size_t samples = 1000;
    unsigned threads = 0;
    auto* verify = app.add_subcommand("verify", "check the bound over seeded decomposable states");
    verify->add_option("--samples", samples, "number of seeded states")->capture_default_str();
    verify->add_option("--gamma-grid", grid_spec, "start:end:step or a comma-separated list")->capture_default_str();
    verify->add_option("--threads", threads, "worker threads (0 = hardware concurrency)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kInvalid;
    }

    if (tol && !(*tol > 0)) {
        std::cerr << "error: --tol must be positive\n";
        return cli::kInvalid;
    }

    if (*entropy) return cli::cmd_entropy(input, std::cout, std::cerr);
    if (*portrait) return cli::cmd_portrait(input, std::cout, std::cerr);
    if (*decompose) return cli::cmd_decompose(input, tol.value_or(qgain::kDecompositionTol), std::cout, std::cerr);

    int code = cli::kOk;
    const auto grid = grid_or_exit(grid_spec, code);
    if (!grid) return code;

    if (*sweep) {
        cli::SweepOptions opt;
        if (!input.empty()) opt.input = input;
        opt.seed = seed;
        opt.grid = *grid;
        opt.csv_path = csv_path;
        opt.tol = tol.value_or(qgain::kDecompositionTol);
        return cli::cmd_sweep(opt, std::cout, std::cerr);
    }

    cli::VerifyOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    opt.grid = *grid;
    opt.tol = tol.value_or(qgain::kBoundTol);
    opt.threads = threads;
    return cli::cmd_verify(opt, std::cout, std::cerr);
}
