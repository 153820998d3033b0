#pragma once

#include <utility>
#include <vector>

#include "bellscope/chsh.hpp"
#include "bellscope/errors.hpp"
#include "bellscope/states.hpp"

namespace bellscope {

constexpr double kClassicalBound = 2.0;
constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;
constexpr double kBoundSlack = 1e-9;

struct PairChsh {
    int i = 0;
    int j = 0;
    ChshResult result;
};

struct TradeoffReport {
    int n = 0;
    std::vector<PairChsh> pairs;
    double squared_sum = 0.0;
    double bound = 0.0;  // 2n(n-1)
    bool satisfied = false;
    int violating_pairs = 0;  // pairs with value > 2 (beyond slack)
};

inline std::vector<PairChsh> pairwise_chsh(const DensityMatrix& rho) {
    if (rho.n < 2 || rho.n > kMaxQubits)
        throw ValidationError("pairwise_chsh: qubit count out of range");
    std::vector<PairChsh> out;
    for (int i = 0; i < rho.n; ++i)
        for (int j = i + 1; j < rho.n; ++j)
            out.push_back({i, j, chsh_max(reduced(rho, {i, j}))});
    return out;
}

inline TradeoffReport tradeoff_report(const DensityMatrix& rho) {
    TradeoffReport report;
    report.n = rho.n;
    report.pairs = pairwise_chsh(rho);
    for (const auto& p : report.pairs) {
        report.squared_sum += p.result.value * p.result.value;
        if (p.result.value > kClassicalBound + kBoundSlack) ++report.violating_pairs;
    }
    report.bound = 2.0 * rho.n * (rho.n - 1);
    report.satisfied = report.squared_sum <= report.bound + kBoundSlack;
    return report;
}

// Sum over the three pairs of ||M||_F^2; equals 3 for every pure 3-qubit state.
inline double frobenius_identity(const PureState& psi) {
    if (psi.n != 3) throw ValidationError("frobenius_identity: state must be three-qubit");
    const DensityMatrix rho = DensityMatrix::from_pure(psi);
    double sum = 0.0;
    for (const auto& pair : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
        sum += frobenius_sq(correlation_matrix(reduced(rho, {pair.first, pair.second})).m);
    return sum;
}

// Sum of squared chsh_max over the two pairs containing `shared`, each pair
// maximized with its own settings.
inline double monogamy_pair_sum(const DensityMatrix& rho, int shared) {
    if (rho.n != 3) throw ValidationError("monogamy_pair_sum: state must be three-qubit");
    if (shared < 0 || shared > 2)
        throw ValidationError("monogamy_pair_sum: shared qubit index out of range");
    double sum = 0.0;
    for (int other = 0; other < 3; ++other) {
        if (other == shared) continue;
        const int i = std::min(shared, other);
        const int j = std::max(shared, other);
        const double v = chsh_max(reduced(rho, {i, j})).value;
        sum += v * v;
    }
    return sum;
}

struct ImplicationFlags {
    bool at_most_two_violations = false;
    bool max_pair_forces_others_classical = false;
};

inline ImplicationFlags implication_checks(const DensityMatrix& rho) {
    if (rho.n != 3) throw ValidationError("implication_checks: state must be three-qubit");
    const auto pairs = pairwise_chsh(rho);
    int violations = 0;
    for (const auto& p : pairs)
        if (p.result.value > kClassicalBound + kBoundSlack) ++violations;

    ImplicationFlags flags;
    flags.at_most_two_violations = violations <= 2;
    flags.max_pair_forces_others_classical = true;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (pairs[k].result.value < kTsirelson - 1e-6) continue;
        for (std::size_t l = 0; l < pairs.size(); ++l)
            if (l != k && pairs[l].result.value > kClassicalBound + 1e-6)
                flags.max_pair_forces_others_classical = false;
    }
    return flags;
}

}  // namespace bellscope
