// bellscope: maximal CHSH violations of two-qubit reductions and the
// pairwise trade-off bound 2n(n-1).

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bellscope/chsh.hpp"
#include "bellscope/io.hpp"
#include "bellscope/search.hpp"
#include "bellscope/states.hpp"
#include "bellscope/tradeoff.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitVerifyFailed = 3;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("BELLSCOPE_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw bellscope::ValidationError("BELLSCOPE_SEED is not a decimal 64-bit integer");
        }
    }
    return 0;
}

int run_chsh(const std::string& state_path, const std::string& pair_text) {
    const auto comma = pair_text.find(',');
    if (comma == std::string::npos)
        throw bellscope::ValidationError("--pair expects i,j");
    const int i = std::stoi(pair_text.substr(0, comma));
    const int j = std::stoi(pair_text.substr(comma + 1));
    if (i == j) throw bellscope::ValidationError("--pair indices must differ");

    const bellscope::DensityMatrix rho = bellscope::load_state_file(state_path).to_density();
    const bellscope::DensityMatrix pair_rho =
        rho.n == 2 && i + j == 1 ? rho : bellscope::reduced(rho, {std::min(i, j), std::max(i, j)});
    const auto result = bellscope::chsh_max(pair_rho);
    std::cout << "value " << bellscope::format_g12(result.value) << '\n'
              << "tau1 " << bellscope::format_g12(result.tau1) << '\n'
              << "tau2 " << bellscope::format_g12(result.tau2) << '\n'
              << "tau_min " << bellscope::format_g12(result.tau_min) << '\n';
    return 0;
}

int run_tradeoff(const std::string& state_path) {
    const bellscope::DensityMatrix rho = bellscope::load_state_file(state_path).to_density();
    const auto report = bellscope::tradeoff_report(rho);
    std::cout << "pair value squared\n";
    for (const auto& p : report.pairs) {
        const double v = p.result.value;
        std::cout << p.i << ',' << p.j << ' ' << bellscope::format_g12(v) << ' '
                  << bellscope::format_g12(v * v) << '\n';
    }
    std::cout << "squared_sum " << bellscope::format_g12(report.squared_sum) << '\n'
              << "bound " << bellscope::format_g12(report.bound) << '\n'
              << "violating_pairs " << report.violating_pairs << '\n'
              << "verdict " << (report.satisfied ? "satisfied" : "violated") << '\n';
    return report.satisfied ? 0 : kExitVerifyFailed;
}

int run_scan(const std::string& figure, int res, const std::string& out_path) {
    const auto table =
        figure == "fig1" ? bellscope::scan_fig1(res > 0 ? res : 201)
                         : bellscope::scan_fig2(res > 0 ? res : 721);
    bellscope::write_csv(table, out_path);
    std::cout << "wrote " << table.rows.size() << " rows to " << out_path << '\n';
    return 0;
}

int run_optimize(const std::string& objective, int shared, int starts, std::uint64_t seed) {
    bellscope::SearchConfig config;
    config.shared = shared;
    config.starts = starts;
    config.seed = seed;
    const auto result = objective == "saturation" ? bellscope::maximize_saturation(config)
                                                  : bellscope::maximize_monogamy(config);
    std::cout << "best_value " << bellscope::format_g12(result.best_value) << '\n'
              << "lambda";
    for (double l : result.best_params.lambda) std::cout << ' ' << bellscope::format_g12(l);
    std::cout << '\n' << "psi " << bellscope::format_g12(result.best_params.psi) << '\n';
    return 0;
}

int run_verify(int samples, std::uint64_t seed) {
    const auto report = bellscope::run_verify(samples, seed);
    for (const auto& suite : report.suites) {
        std::cout << suite.name << ": " << (suite.passed ? "pass" : "FAIL");
        if (!suite.passed) {
            std::cout << " (sample " << suite.failing_index;
            if (!suite.detail.empty()) std::cout << ", " << suite.detail;
            std::cout << ")";
        }
        std::cout << '\n';
    }
    return report.all_passed() ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CHSH violations of two-qubit reductions and pairwise trade-off bounds"};
    app.require_subcommand(1);

    std::string state_path;
    std::string pair_text = "0,1";
    auto* chsh = app.add_subcommand("chsh", "maximal CHSH value of a two-qubit reduction");
    chsh->add_option("--state", state_path, "state file")->required();
    chsh->add_option("--pair", pair_text, "qubit pair i,j");

    std::string tradeoff_path;
    auto* tradeoff = app.add_subcommand("tradeoff", "pairwise CHSH trade-off report");
    tradeoff->add_option("--state", tradeoff_path, "state file")->required();

    std::string figure;
    int res = -1;
    std::string out_path;
    auto* scan = app.add_subcommand("scan", "emit figure-data CSV");
    scan->add_option("figure", figure, "fig1 or fig2")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2"}));
    scan->add_option("--res", res, "samples per axis");
    scan->add_option("--out", out_path, "output CSV path")->required();

    std::string objective;
    int shared = 2;
    int starts = 32;
    std::int64_t seed_flag = -1;
    auto* optimize = app.add_subcommand("optimize", "multi-start search over Schmidt parameters");
    optimize->add_option("objective", objective, "saturation or monogamy")
        ->required()
        ->check(CLI::IsMember({"saturation", "monogamy"}));
    optimize->add_option("--shared", shared, "shared qubit index (monogamy)");
    optimize->add_option("--starts", starts, "number of starts");
    optimize->add_option("--seed", seed_flag, "RNG seed (overrides BELLSCOPE_SEED)");

    int samples = 10000;
    std::int64_t verify_seed_flag = -1;
    auto* verify = app.add_subcommand("verify", "run the seeded invariant suites");
    verify->add_option("--samples", samples, "number of samples");
    verify->add_option("--seed", verify_seed_flag, "RNG seed (overrides BELLSCOPE_SEED)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (chsh->parsed()) return run_chsh(state_path, pair_text);
        if (tradeoff->parsed()) return run_tradeoff(tradeoff_path);
        if (scan->parsed()) return run_scan(figure, res, out_path);
        if (optimize->parsed()) {
            const std::uint64_t seed =
                seed_flag >= 0 ? static_cast<std::uint64_t>(seed_flag) : default_seed();
            return run_optimize(objective, shared, starts, seed);
        }
        if (verify->parsed()) {
            const std::uint64_t seed = verify_seed_flag >= 0
                                           ? static_cast<std::uint64_t>(verify_seed_flag)
                                           : default_seed();
            return run_verify(samples, seed);
        }
    } catch (const bellscope::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const bellscope::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
