#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hammerstein/newton_dl.hpp"
#include "hammerstein/newton_ld.hpp"
#include "hammerstein/problem.hpp"
#include "hammerstein/quadrature.hpp"

namespace hammerstein {

/// A function given either as a literal constant or by registry name.
struct FunctionSpec {
    std::optional<double> constant;
    std::string name;

    ScalarFunction resolve() const;
};

enum class SolverSelection { LD, DL, Both };

struct RunConfig {
    int schema = 1;
    double a = 0.0;
    double b = 1.0;
    std::string kernel = "log";  ///< log | power | smooth
    double beta = 0.5;           ///< power kernel exponent
    std::string H = "one";       ///< smooth kernel, kernel_function registry
    std::string L = "one";
    std::string F;
    std::vector<double> F_coeffs;  ///< F = "poly"

    bool y_manufactured = false;  ///< y := exact - K(exact)
    FunctionSpec y;
    double quad_tol = 1e-11;
    std::optional<FunctionSpec> exact;
    std::optional<FunctionSpec> phi0;  ///< absent means phi0 = y

    std::size_t n = 50;
    std::vector<std::size_t> n_list;  ///< default sweep list
    SolverSelection solver = SolverSelection::Both;
    double tol = 1e-12;
    int max_iter = 30;
    int min_iter = 0;
    QuadratureConfig quad;
    std::size_t sample_count = 201;
    double epsilon = 1e-6;
    std::uint64_t seed = 0;
    bool timing = false;
};

/// Parses and validates JSON text, filling defaults. Every problem is reported as a
/// ConfigError whose field() is a dotted path such as "config.quad.n_fine".
/// `seed_override` replaces the configured seed when set.
RunConfig parse_config(std::string_view json_text,
                       std::optional<std::uint64_t> seed_override = std::nullopt);

/// Reads `path`; HAMMERSTEIN_SEED (if set) overrides the seed.
RunConfig validate_config(const std::filesystem::path& path);

/// Effective configuration (defaults filled) as pretty-printed JSON.
std::string effective_config_json(const RunConfig& cfg);

/// Builds the problem; also checks dF and d2F against centered differences at
/// random samples drawn from the configured seed.
HammersteinProblem build_problem(const RunConfig& cfg);

LDSettings ld_settings(const RunConfig& cfg);
DLSettings dl_settings(const RunConfig& cfg);

}  // namespace hammerstein
