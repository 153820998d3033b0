#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "bellscope/errors.hpp"
#include "bellscope/rng.hpp"
#include "bellscope/states.hpp"
#include "bellscope/tradeoff.hpp"

namespace bellscope {

struct NelderMeadOptions {
    int max_iterations = 2000;
    double tolerance = 1e-12;    // termination on objective spread over the simplex
    double initial_step = 0.5;   // offset used to build the start simplex
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
};

// Standard Nelder-Mead: reflection 1, expansion 2, contraction 0.5, shrink 0.5.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    const std::vector<double>& start,
                                    const NelderMeadOptions& options = {}) {
    const std::size_t d = start.size();
    if (d == 0) throw ValidationError("nelder_mead: empty start point");

    auto eval = [&](const std::vector<double>& x) {
        const double v = f(x);
        if (!std::isfinite(v)) throw NumericError("nelder_mead: non-finite objective value");
        return v;
    };

    std::vector<std::vector<double>> simplex(d + 1, start);
    std::vector<double> values(d + 1);
    for (std::size_t i = 0; i < d; ++i)
        simplex[i + 1][i] += (start[i] != 0.0 ? options.initial_step * std::abs(start[i])
                                              : options.initial_step);
    for (std::size_t i = 0; i <= d; ++i) values[i] = eval(simplex[i]);

    std::vector<std::size_t> order(d + 1);
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[d - 1];
        if (values[worst] - values[best] < options.tolerance) break;

        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < d; ++k) centroid[k] += simplex[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(d);

        auto along = [&](double coeff) {
            std::vector<double> x(d);
            for (std::size_t k = 0; k < d; ++k)
                x[k] = centroid[k] + coeff * (simplex[worst][k] - centroid[k]);
            return x;
        };

        const std::vector<double> reflected = along(-1.0);
        const double fr = eval(reflected);
        if (fr < values[best]) {
            const std::vector<double> expanded = along(-2.0);
            const double fe = eval(expanded);
            if (fe < fr) {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
        } else if (fr < values[second_worst]) {
            simplex[worst] = reflected;
            values[worst] = fr;
        } else {
            const bool outside = fr < values[worst];
            const std::vector<double> contracted = along(outside ? -0.5 : 0.5);
            const double fc = eval(contracted);
            if (fc < std::min(fr, values[worst])) {
                simplex[worst] = contracted;
                values[worst] = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 0; i <= d; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < d; ++k)
                        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
                    values[i] = eval(simplex[i]);
                }
            }
        }
    }

    const std::size_t best =
        static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    return {simplex[best], values[best], iter};
}

enum class Objective { saturation_sum, monogamy_sum };

struct SearchConfig {
    Objective objective = Objective::saturation_sum;
    int shared = 2;  // only for monogamy_sum
    int starts = 32;
    std::uint64_t seed = 0;
    int max_iterations = 2000;
    double tolerance = 1e-12;

    void validate() const {
        if (starts < 1) throw ValidationError("SearchConfig: starts must be >= 1");
        if (tolerance <= 0.0) throw ValidationError("SearchConfig: tolerance must be positive");
        if (objective == Objective::monogamy_sum && (shared < 0 || shared > 2))
            throw ValidationError("SearchConfig: shared index out of range");
    }
};

struct SearchResult {
    SchmidtParams best_params;
    double best_value = 0.0;
    std::vector<double> trace;  // best value per start
};

// Unconstrained R^5 x R point -> SchmidtParams: normalize the 5-vector,
// reflect psi into [0, pi].
inline SchmidtParams params_from_point(const std::vector<double>& x) {
    if (x.size() != 6) throw ValidationError("params_from_point: need 6 coordinates");
    std::array<double, 5> lambda{};
    double norm_sq = 0.0;
    for (int i = 0; i < 5; ++i) {
        lambda[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
        norm_sq += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    }
    if (norm_sq < 1e-24) throw NumericError("params_from_point: degenerate lambda vector");
    double psi = std::fmod(x[5], 2.0 * std::numbers::pi);
    if (psi < 0.0) psi += 2.0 * std::numbers::pi;
    if (psi > std::numbers::pi) psi = 2.0 * std::numbers::pi - psi;
    return SchmidtParams::normalized(lambda, psi);
}

namespace detail {

inline double evaluate_objective(Objective objective, int shared, const SchmidtParams& params) {
    const DensityMatrix rho = DensityMatrix::from_pure(schmidt_state(params));
    return objective == Objective::saturation_sum ? tradeoff_report(rho).squared_sum
                                                  : monogamy_pair_sum(rho, shared);
}

inline SearchResult run_search(const SearchConfig& config) {
    config.validate();
    auto negated = [&](const std::vector<double>& x) {
        SchmidtParams p = params_from_point(x);
        return -evaluate_objective(config.objective, config.shared, p);
    };

    SearchResult result;
    result.trace.resize(static_cast<std::size_t>(config.starts));
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_point;
    for (int k = 0; k < config.starts; ++k) {
        Rng rng(config.seed, static_cast<std::uint64_t>(k));
        std::vector<double> start(6);
        double norm_sq = 0.0;
        for (int i = 0; i < 5; ++i) {
            start[static_cast<std::size_t>(i)] = rng.gaussian();
            norm_sq += start[static_cast<std::size_t>(i)] * start[static_cast<std::size_t>(i)];
        }
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (int i = 0; i < 5; ++i) start[static_cast<std::size_t>(i)] *= inv;
        start[5] = rng.uniform(0.0, std::numbers::pi);

        NelderMeadOptions options;
        options.max_iterations = config.max_iterations;
        options.tolerance = config.tolerance;
        const auto run = nelder_mead(negated, start, options);
        result.trace[static_cast<std::size_t>(k)] = -run.value;
        if (run.value < best) {  // strict: ties resolve to the lowest start index
            best = run.value;
            best_point = run.x;
        }
    }
    result.best_params = params_from_point(best_point);
    result.best_value =
        evaluate_objective(config.objective, config.shared, result.best_params);
    return result;
}

}  // namespace detail

// Maximize the pairwise squared-CHSH sum over Schmidt states (bound: 12).
inline SearchResult maximize_saturation(SearchConfig config) {
    config.objective = Objective::saturation_sum;
    return detail::run_search(config);
}

// Maximize the independent-settings monogamy sum over Schmidt states.
inline SearchResult maximize_monogamy(SearchConfig config) {
    config.objective = Objective::monogamy_sum;
    return detail::run_search(config);
}

}  // namespace bellscope
