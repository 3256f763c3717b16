#include "hammerstein/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "hammerstein/errors.hpp"
#include "hammerstein/functions.hpp"
#include "json.hpp"

namespace hammerstein {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownFields = {
    "schema", "domain",  "kernel", "beta",     "H",        "L",         "F",
    "F_coeffs", "y",     "exact",  "quad_tol", "phi0",     "n",         "n_list",
    "solver", "tol",     "max_iter", "min_iter", "quad",   "sample_count", "epsilon",
    "seed",   "timing"};

std::string path_of(const std::string& key) { return "config." + key; }

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
    return v;
}

double get_positive(const json& j, const std::string& path) {
    const double v = get_number(j, path);
    if (!(v > 0.0)) throw ConfigError(path, "must be > 0, got " + j.dump());
    return v;
}

std::int64_t get_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
    return j.get<std::int64_t>();
}

std::size_t get_count(const json& j, const std::string& path, std::int64_t min) {
    const auto v = get_integer(j, path);
    if (v < min) throw ConfigError(path, "must be >= " + std::to_string(min) + ", got " + j.dump());
    return static_cast<std::size_t>(v);
}

std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path, "expected a string");
    return j.get<std::string>();
}

template <class Names>
void require_member(const std::string& value, const Names& names, const std::string& path,
                    const char* what) {
    for (const auto& n : names)
        if (n == value) return;
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError(path, std::string("unknown ") + what + " '" + value + "' (known: " + list + ")");
}

FunctionSpec get_function(const json& j, const std::string& path) {
    FunctionSpec spec;
    if (j.is_number()) {
        spec.constant = get_number(j, path);
        return spec;
    }
    if (!j.is_string()) throw ConfigError(path, "expected a number or a function name");
    spec.name = j.get<std::string>();
    require_member(spec.name, scalar_function_names(), path, "function");
    return spec;
}

json function_to_json(const FunctionSpec& f) {
    if (f.constant) return *f.constant;
    return f.name;
}

std::optional<std::uint64_t> env_seed() {
    const char* raw = std::getenv("HAMMERSTEIN_SEED");
    if (!raw || !*raw) return std::nullopt;
    char* end = nullptr;
    const auto v = std::strtoull(raw, &end, 10);
    if (*end != '\0') throw ConfigError("env.HAMMERSTEIN_SEED", "expected an unsigned integer");
    return v;
}

void check_derivatives(const Nonlinearity& nl, double a, double b, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> tdist(a, b);
    std::uniform_real_distribution<double> udist(-2.0, 2.0);
    constexpr double step = 1e-5;
    for (int i = 0; i < 16; ++i) {
        const double t = tdist(rng);
        const double u = udist(rng);
        const double fd1 = (nl.F(t, u + step) - nl.F(t, u - step)) / (2 * step);
        const double fd2 = (nl.dF(t, u + step) - nl.dF(t, u - step)) / (2 * step);
        const double d1 = nl.dF(t, u);
        const double d2 = nl.d2F(t, u);
        if (!std::isfinite(d1) || std::abs(fd1 - d1) > 1e-6 * (1.0 + std::abs(d1)))
            throw ConfigError("config.F", "dF disagrees with a difference quotient of F");
        if (!std::isfinite(d2) || std::abs(fd2 - d2) > 1e-6 * (1.0 + std::abs(d2)))
            throw ConfigError("config.F", "d2F disagrees with a difference quotient of dF");
    }
}

}  // namespace

ScalarFunction FunctionSpec::resolve() const {
    if (constant) return constant_function(*constant);
    return scalar_function(name);
}

RunConfig parse_config(std::string_view json_text, std::optional<std::uint64_t> seed_override) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config", "top level must be an object");
    for (const auto& [key, value] : j.items())
        if (!kKnownFields.count(key)) throw ConfigError(path_of(key), "unknown field");

    RunConfig cfg;
    if (j.contains("schema")) {
        cfg.schema = static_cast<int>(get_integer(j["schema"], "config.schema"));
        if (cfg.schema != 1) throw ConfigError("config.schema", "unsupported schema version");
    }
    if (j.contains("domain")) {
        const auto& d = j["domain"];
        if (!d.is_array() || d.size() != 2) throw ConfigError("config.domain", "expected [a, b]");
        cfg.a = get_number(d[0], "config.domain[0]");
        cfg.b = get_number(d[1], "config.domain[1]");
        if (!(cfg.a < cfg.b)) throw ConfigError("config.domain", "require a < b");
    }

    if (!j.contains("kernel")) throw ConfigError("config.kernel", "required");
    cfg.kernel = get_string(j["kernel"], "config.kernel");
    require_member(cfg.kernel, std::vector<std::string>{"log", "power", "smooth"}, "config.kernel",
                   "kernel");
    if (j.contains("beta")) {
        if (cfg.kernel != "power") throw ConfigError("config.beta", "only valid for kernel 'power'");
        cfg.beta = get_number(j["beta"], "config.beta");
    }
    if (cfg.kernel == "power" && !(cfg.beta > 0.0 && cfg.beta < 1.0))
        throw ConfigError("config.beta", "must lie in (0,1), got " + std::to_string(cfg.beta));
    if (j.contains("H")) {
        if (cfg.kernel != "smooth") throw ConfigError("config.H", "only valid for kernel 'smooth'");
        cfg.H = get_string(j["H"], "config.H");
    }
    if (cfg.kernel == "smooth") require_member(cfg.H, kernel_function_names(), "config.H", "kernel function");

    if (j.contains("L")) cfg.L = get_string(j["L"], "config.L");
    require_member(cfg.L, kernel_function_names(), "config.L", "kernel function");

    if (!j.contains("F")) throw ConfigError("config.F", "required");
    cfg.F = get_string(j["F"], "config.F");
    require_member(cfg.F, nonlinearity_names(), "config.F", "nonlinearity");
    if (j.contains("F_coeffs")) {
        if (cfg.F != "poly") throw ConfigError("config.F_coeffs", "only valid for F = 'poly'");
        const auto& c = j["F_coeffs"];
        if (!c.is_array()) throw ConfigError("config.F_coeffs", "expected an array of numbers");
        for (std::size_t i = 0; i < c.size(); ++i)
            cfg.F_coeffs.push_back(get_number(c[i], "config.F_coeffs[" + std::to_string(i) + "]"));
    } else if (cfg.F == "poly") {
        throw ConfigError("config.F_coeffs", "required for F = 'poly'");
    }

    if (j.contains("exact")) cfg.exact = get_function(j["exact"], "config.exact");
    if (!j.contains("y")) throw ConfigError("config.y", "required");
    if (j["y"].is_string() && j["y"].get<std::string>() == "manufactured") {
        cfg.y_manufactured = true;
        if (!cfg.exact) throw ConfigError("config.exact", "required when y is 'manufactured'");
    } else {
        cfg.y = get_function(j["y"], "config.y");
    }
    if (j.contains("quad_tol")) cfg.quad_tol = get_positive(j["quad_tol"], "config.quad_tol");
    if (j.contains("phi0")) {
        const auto& p = j["phi0"];
        if (!(p.is_string() && p.get<std::string>() == "y")) cfg.phi0 = get_function(p, "config.phi0");
    }

    if (!j.contains("n")) throw ConfigError("config.n", "required");
    cfg.n = get_count(j["n"], "config.n", 1);
    if (j.contains("n_list")) {
        const auto& l = j["n_list"];
        if (!l.is_array() || l.empty()) throw ConfigError("config.n_list", "expected a non-empty array");
        for (std::size_t i = 0; i < l.size(); ++i)
            cfg.n_list.push_back(get_count(l[i], "config.n_list[" + std::to_string(i) + "]", 1));
    }
    if (j.contains("solver")) {
        const auto s = get_string(j["solver"], "config.solver");
        if (s == "ld")
            cfg.solver = SolverSelection::LD;
        else if (s == "dl")
            cfg.solver = SolverSelection::DL;
        else if (s == "both")
            cfg.solver = SolverSelection::Both;
        else
            throw ConfigError("config.solver", "expected 'ld', 'dl' or 'both'");
    }
    if (j.contains("tol")) cfg.tol = get_positive(j["tol"], "config.tol");
    if (j.contains("max_iter"))
        cfg.max_iter = static_cast<int>(get_count(j["max_iter"], "config.max_iter", 1));
    if (j.contains("min_iter"))
        cfg.min_iter = static_cast<int>(get_count(j["min_iter"], "config.min_iter", 0));
    if (cfg.min_iter > cfg.max_iter) throw ConfigError("config.min_iter", "must not exceed max_iter");

    if (j.contains("quad")) {
        const auto& q = j["quad"];
        if (!q.is_object()) throw ConfigError("config.quad", "expected an object");
        for (const auto& [key, value] : q.items()) {
            if (key == "n_fine")
                cfg.quad.n_fine = get_count(value, "config.quad.n_fine", 2);
            else if (key == "gl_points")
                cfg.quad.gl_points = get_count(value, "config.quad.gl_points", 2);
            else if (key == "mode") {
                const auto m = get_string(value, "config.quad.mode");
                if (m == "fine")
                    cfg.quad.mode = KMode::FineProductRule;
                else if (m == "subtraction")
                    cfg.quad.mode = KMode::SingularitySubtraction;
                else
                    throw ConfigError("config.quad.mode", "expected 'fine' or 'subtraction'");
            } else {
                throw ConfigError("config.quad." + key, "unknown field");
            }
        }
    }
    if (j.contains("sample_count"))
        cfg.sample_count = get_count(j["sample_count"], "config.sample_count", 2);
    if (j.contains("epsilon")) cfg.epsilon = get_positive(j["epsilon"], "config.epsilon");
    if (j.contains("seed")) {
        const auto s = get_integer(j["seed"], "config.seed");
        if (s < 0) throw ConfigError("config.seed", "must be >= 0");
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    if (j.contains("timing")) {
        if (!j["timing"].is_boolean()) throw ConfigError("config.timing", "expected true or false");
        cfg.timing = j["timing"].get<bool>();
    }
    if (seed_override) cfg.seed = *seed_override;
    return cfg;
}

RunConfig validate_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), env_seed());
}

std::string effective_config_json(const RunConfig& cfg) {
    json j;
    j["schema"] = cfg.schema;
    j["domain"] = {cfg.a, cfg.b};
    j["kernel"] = cfg.kernel;
    if (cfg.kernel == "power") j["beta"] = cfg.beta;
    if (cfg.kernel == "smooth") j["H"] = cfg.H;
    j["L"] = cfg.L;
    j["F"] = cfg.F;
    if (cfg.F == "poly") j["F_coeffs"] = cfg.F_coeffs;
    j["y"] = cfg.y_manufactured ? json("manufactured") : function_to_json(cfg.y);
    if (cfg.y_manufactured) j["quad_tol"] = cfg.quad_tol;
    if (cfg.exact) j["exact"] = function_to_json(*cfg.exact);
    j["phi0"] = cfg.phi0 ? function_to_json(*cfg.phi0) : json("y");
    j["n"] = cfg.n;
    if (!cfg.n_list.empty()) j["n_list"] = cfg.n_list;
    j["solver"] = cfg.solver == SolverSelection::LD ? "ld" : cfg.solver == SolverSelection::DL ? "dl" : "both";
    j["tol"] = cfg.tol;
    j["max_iter"] = cfg.max_iter;
    j["min_iter"] = cfg.min_iter;
    j["quad"] = {{"n_fine", cfg.quad.n_fine},
                 {"mode", to_string(cfg.quad.mode)},
                 {"gl_points", cfg.quad.gl_points}};
    j["sample_count"] = cfg.sample_count;
    j["epsilon"] = cfg.epsilon;
    j["seed"] = cfg.seed;
    j["timing"] = cfg.timing;
    return j.dump(2);
}

HammersteinProblem build_problem(const RunConfig& cfg) {
    SingularKernel kernel = cfg.kernel == "log"     ? SingularKernel::logarithmic()
                            : cfg.kernel == "power" ? SingularKernel::algebraic_power(cfg.beta)
                                                    : SingularKernel::smooth(kernel_function(cfg.H), cfg.H);
    Nonlinearity nl = cfg.F == "poly" ? polynomial_nonlinearity(cfg.F_coeffs) : nonlinearity(cfg.F);
    check_derivatives(nl, cfg.a, cfg.b, cfg.seed);

    std::optional<ScalarFunction> exact;
    if (cfg.exact) exact = cfg.exact->resolve();
    if (cfg.y_manufactured)
        return manufactured_problem(cfg.a, cfg.b, std::move(kernel), kernel_function(cfg.L),
                                    std::move(nl), *exact, cfg.quad_tol);
    return make_problem(cfg.a, cfg.b, std::move(kernel), kernel_function(cfg.L), std::move(nl),
                        cfg.y.resolve(), std::move(exact));
}

LDSettings ld_settings(const RunConfig& cfg) {
    LDSettings s;
    s.tol = cfg.tol;
    s.max_iter = cfg.max_iter;
    s.min_iter = cfg.min_iter;
    s.quad = cfg.quad;
    s.sample_count = cfg.sample_count;
    s.record_timing = cfg.timing;
    return s;
}

DLSettings dl_settings(const RunConfig& cfg) {
    DLSettings s;
    s.tol = cfg.tol;
    s.max_iter = cfg.max_iter;
    s.min_iter = cfg.min_iter;
    s.sample_count = cfg.sample_count;
    s.record_timing = cfg.timing;
    return s;
}

}  // namespace hammerstein
