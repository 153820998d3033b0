#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bellscope/chsh.hpp"
#include "bellscope/errors.hpp"
#include "bellscope/states.hpp"
#include "bellscope/tradeoff.hpp"

namespace bellscope {

// Shortest decimal text at 12 significant digits.
inline std::string format_g12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// One state per file, JSON with explicit (re, im) pairs.
struct StateFile {
    std::string type;  // "pure" | "density" | "schmidt"
    std::optional<PureState> pure;
    std::optional<DensityMatrix> density;
    std::optional<SchmidtParams> schmidt;

    static StateFile from_pure(PureState psi) {
        StateFile f;
        f.type = "pure";
        f.pure = std::move(psi);
        return f;
    }
    static StateFile from_density(DensityMatrix rho) {
        StateFile f;
        f.type = "density";
        f.density = std::move(rho);
        return f;
    }
    static StateFile from_schmidt(SchmidtParams p) {
        StateFile f;
        f.type = "schmidt";
        f.schmidt = p;
        return f;
    }

    DensityMatrix to_density() const {
        if (type == "pure") return DensityMatrix::from_pure(*pure);
        if (type == "density") return *density;
        return DensityMatrix::from_pure(schmidt_state(*schmidt));
    }
};

namespace detail {

inline nlohmann::json complex_list(const std::vector<Complex>& values) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : values) out.push_back({v.real(), v.imag()});
    return out;
}

inline std::vector<Complex> parse_complex_list(const nlohmann::json& j) {
    std::vector<Complex> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2)
            throw ValidationError("state file: entries must be [re, im] pairs");
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

}  // namespace detail

inline nlohmann::json to_json(const StateFile& f) {
    nlohmann::json j;
    j["type"] = f.type;
    if (f.type == "pure") {
        j["n"] = f.pure->n;
        j["amplitudes"] = detail::complex_list(f.pure->amplitudes);
    } else if (f.type == "density") {
        j["n"] = f.density->n;
        j["matrix"] = detail::complex_list(f.density->matrix.entries());
    } else if (f.type == "schmidt") {
        j["lambda"] = f.schmidt->lambda;
        j["psi"] = f.schmidt->psi;
    } else {
        throw ValidationError("state file: unknown type '" + f.type + "'");
    }
    return j;
}

inline StateFile from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "pure") {
        return StateFile::from_pure(
            PureState(j.at("n").get<int>(), detail::parse_complex_list(j.at("amplitudes"))));
    }
    if (type == "density") {
        const int n = j.at("n").get<int>();
        const std::size_t dim = std::size_t{1} << n;
        return StateFile::from_density(
            DensityMatrix(n, ComplexMatrix(dim, dim, detail::parse_complex_list(j.at("matrix")))));
    }
    if (type == "schmidt") {
        const auto lambda = j.at("lambda").get<std::array<double, 5>>();
        return StateFile::from_schmidt(SchmidtParams(lambda, j.at("psi").get<double>()));
    }
    throw ValidationError("state file: unknown type '" + type + "'");
}

inline void save_state_file(const StateFile& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
    out << to_json(f).dump(2) << '\n';
    if (!out) throw std::ios_base::failure("write failed for '" + path + "'");
}

inline StateFile load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open state file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("state file parse error: " + std::string(e.what()));
    }
    try {
        return from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("state file schema error: " + std::string(e.what()));
    }
}

// --- figure-data scans ------------------------------------------------------

struct ScanRow {
    std::vector<double> columns;
};

struct ScanTable {
    std::vector<std::string> header;
    std::vector<ScanRow> rows;
};

namespace detail {

inline std::array<double, 3> pair_values(const SchmidtParams& p) {
    const DensityMatrix rho = DensityMatrix::from_pure(schmidt_state(p));
    return {chsh_max(reduced(rho, {0, 1})).value, chsh_max(reduced(rho, {0, 2})).value,
            chsh_max(reduced(rho, {1, 2})).value};
}

}  // namespace detail

// lambda1 = 0, lambda0 = cos(alpha), lambda2 = sin(alpha)cos(beta),
// lambda3 = sin(alpha)sin(beta); alpha in [0, pi], beta in [0, 2pi].
inline ScanTable scan_fig1(int resolution = 201) {
    if (resolution < 2) throw ValidationError("scan: resolution must be >= 2");
    ScanTable table;
    table.header = {"alpha", "beta", "q_ab", "q_ac", "q_bc"};
    for (int ia = 0; ia < resolution; ++ia) {
        const double alpha = std::numbers::pi * ia / (resolution - 1);
        for (int ib = 0; ib < resolution; ++ib) {
            const double beta = 2.0 * std::numbers::pi * ib / (resolution - 1);
            const std::array<double, 5> lambda{std::cos(alpha), 0.0,
                                               std::sin(alpha) * std::cos(beta),
                                               std::sin(alpha) * std::sin(beta), 0.0};
            const auto q = detail::pair_values(SchmidtParams::normalized(lambda, 0.0));
            table.rows.push_back({{alpha, beta, q[0], q[1], q[2]}});
        }
    }
    return table;
}

// lambda0 = sqrt(2)/2, lambda2 = sqrt(2)/2 cos(theta),
// lambda3 = sqrt(2)/2 sin(theta); theta in [0, 2pi].
inline ScanTable scan_fig2(int resolution = 721) {
    if (resolution < 2) throw ValidationError("scan: resolution must be >= 2");
    ScanTable table;
    table.header = {"theta", "q_ab", "q_ac", "q_bc"};
    const double h = std::numbers::sqrt2 / 2.0;
    for (int it = 0; it < resolution; ++it) {
        const double theta = 2.0 * std::numbers::pi * it / (resolution - 1);
        const std::array<double, 5> lambda{h, 0.0, h * std::cos(theta), h * std::sin(theta), 0.0};
        const auto q = detail::pair_values(SchmidtParams::normalized(lambda, 0.0));
        table.rows.push_back({{theta, q[0], q[1], q[2]}});
    }
    return table;
}

inline std::string render_csv(const ScanTable& table) {
    std::ostringstream out;
    for (std::size_t k = 0; k < table.header.size(); ++k)
        out << (k ? "," : "") << table.header[k];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.columns.size(); ++k)
            out << (k ? "," : "") << format_g12(row.columns[k]);
        out << '\n';
    }
    return out.str();
}

inline void write_csv(const ScanTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
    out << render_csv(table);
    if (!out) throw std::ios_base::failure("write failed for '" + path + "'");
}

// --- seeded Monte Carlo verification harness --------------------------------

struct VerifySuite {
    std::string name;
    bool passed = true;
    std::int64_t failing_index = -1;  // sample index of the first failure
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifySuite> suites;
    bool all_passed() const {
        for (const auto& s : suites)
            if (!s.passed) return false;
        return true;
    }
};

// Runs the Theorem/identity suites on seeded samples:
//   (a) Frobenius identity = 3 on pure 3-qubit states,
//   (b) trade-off bound on pure and mixed 3-qubit states,
//   (c) implication flags,
//   (d) closed-form / numeric agreement at lambda4 = 0.
inline VerifyReport run_verify(int samples, std::uint64_t seed) {
    if (samples < 1) throw ValidationError("verify: samples must be >= 1");
    VerifyReport report;

    VerifySuite frob{"frobenius_identity"};
    VerifySuite bound{"tradeoff_bound"};
    VerifySuite flags{"implication_flags"};
    VerifySuite closed{"closed_form_agreement"};

    for (int k = 0; k < samples; ++k) {
        const auto idx = static_cast<std::uint64_t>(k);
        const PureState psi = random_pure(3, seed, idx);
        const DensityMatrix rho = DensityMatrix::from_pure(psi);

        if (frob.passed && std::abs(frobenius_identity(psi) - 3.0) > 1e-9) {
            frob.passed = false;
            frob.failing_index = k;
        }

        const auto rep = tradeoff_report(rho);
        if (bound.passed && rep.squared_sum > 12.0 + 1e-9) {
            bound.passed = false;
            bound.failing_index = k;
            bound.detail = "pure sample";
        }
        const DensityMatrix mixed = random_mixed(3, 3, seed + 0x6d69786564ULL, idx);
        if (bound.passed && tradeoff_report(mixed).squared_sum > 12.0 + 1e-9) {
            bound.passed = false;
            bound.failing_index = k;
            bound.detail = "mixed sample";
        }

        const auto fl = implication_checks(rho);
        if (flags.passed && !(fl.at_most_two_violations && fl.max_pair_forces_others_classical)) {
            flags.passed = false;
            flags.failing_index = k;
        }

        if (closed.passed) {
            Rng rng(seed + 0x636c6f736564ULL, idx);
            std::array<double, 5> lambda{};
            double norm_sq = 0.0;
            for (int i = 0; i < 4; ++i) {
                lambda[static_cast<std::size_t>(i)] = rng.gaussian();
                norm_sq += lambda[static_cast<std::size_t>(i)] * lambda[static_cast<std::size_t>(i)];
            }
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (int i = 0; i < 4; ++i) lambda[static_cast<std::size_t>(i)] *= inv;
            const SchmidtParams params(lambda, rng.uniform(0.0, std::numbers::pi));
            const auto cf = closed_form_chsh_sq(params);
            const DensityMatrix srho = DensityMatrix::from_pure(schmidt_state(params));
            const std::array<double, 3> numeric{
                chsh_max(reduced(srho, {0, 1})).value, chsh_max(reduced(srho, {0, 2})).value,
                chsh_max(reduced(srho, {1, 2})).value};
            for (int i = 0; i < 3; ++i) {
                const auto u = static_cast<std::size_t>(i);
                if (std::abs(cf[u] - numeric[u] * numeric[u]) > 1e-9) {
                    closed.passed = false;
                    closed.failing_index = k;
                    break;
                }
            }
        }
    }

    report.suites = {frob, bound, flags, closed};
    return report;
}

}  // namespace bellscope
