// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "hammerstein/dense.hpp"
#include "hammerstein/experiment.hpp"
#include "hammerstein/newton_dl.hpp"
#include "hammerstein/newton_ld.hpp"
#include "oracle.hpp"

using namespace hammerstein;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

HammersteinProblem cos_square_problem() {
    return manufactured_problem(0, 1, SingularKernel::logarithmic(),
                                [](double, double) { return 1.0; }, nonlinearity("square"),
                                [](double s) { return std::cos(s); }, 1e-11);
}

HammersteinProblem constant_solution_problem() {
    return make_problem(0, 1, SingularKernel::logarithmic(), [](double, double) { return 1.0; },
                        nonlinearity("sin_pi"), [](double) { return 1.0; },
                        ScalarFunction([](double) { return 1.0; }));
}

// Solves shared between criteria 4 to 6.
struct ManufacturedRuns {
    HammersteinProblem problem = cos_square_problem();
    std::map<std::size_t, SolveReport> ld;
    SolveReport dl50;
    double seconds = 0.0;
};

ManufacturedRuns& manufactured_runs() {
    static ManufacturedRuns runs = [] {
        ManufacturedRuns r;
        const auto t0 = std::chrono::steady_clock::now();
        for (std::size_t n : {10u, 25u, 50u}) r.ld[n] = ld_solve(r.problem, make_grid(0, 1, n), LDSettings{}).report;
        DLSettings ds;
        ds.min_iter = 10;
        r.dl50 = dl_solve(r.problem, make_grid(0, 1, 50), ds).report;
        r.seconds = seconds_since(t0);
        return r;
    }();
    return runs;
}

Outcome weights_match_oracle() {
    Outcome o;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<SingularKernel> kernels{
        SingularKernel::logarithmic(), SingularKernel::algebraic_power(0.5),
        SingularKernel::smooth([](double s, double t) { return std::exp(-(s - t) * (s - t)); }, "gauss")};
    double worst_sum = 0.0, worst_w = 0.0, prod_seconds = 0.0;
    for (const auto& k : kernels) {
        for (std::size_t n : {1u, 2u, 7u, 50u}) {
            const auto g = make_grid(0, 1, n);
            for (int i = 0; i < 100; ++i) {
                const double s = u(rng);
                const auto t0 = std::chrono::steady_clock::now();
                const auto w = product_weights(g, k, s).w;
                const double m0 = moment0(k, s, 0, 1);
                prod_seconds += seconds_since(t0);
                double sum = 0.0;
                for (double x : w) sum += x;
                worst_sum = std::max(worst_sum, std::abs(sum - m0) / std::max(1.0, std::abs(m0)));
                for (std::size_t j = 0; j <= n; ++j)
                    worst_w = std::max(worst_w, std::abs(w[j] - oracle::weight(g, k, s, j)));
            }
        }
    }
    o.require(worst_sum <= 1e-12, "sum identity " + sci(worst_sum));
    o.require(worst_w <= 1e-10, "oracle mismatch " + sci(worst_w));
    o.require(prod_seconds <= 10.0, "runtime " + sci(prod_seconds) + " s");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("max sum dev ") + sci(worst_sum) +
                ", max weight dev " + sci(worst_w) + ", weights " + sci(prod_seconds) + " s";
    return o;
}

Outcome trapezoidal_degeneration() {
    Outcome o;
    const auto one = SingularKernel::smooth([](double, double) { return 1.0; }, "one");
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    long worst = 0;
    auto ulps = [](double x, double y) {
        long n = 0;
        while (x != y && n < 1000) {
            x = std::nextafter(x, y);
            ++n;
        }
        return n;
    };
    for (std::size_t n : {1u, 2u, 3u, 7u, 10u, 50u, 100u}) {
        for (auto [a, b] : {std::pair{0.0, 1.0}, std::pair{-1.0, 2.0}, std::pair{0.5, 3.25}}) {
            const auto g = make_grid(a, b, n);
            for (int i = 0; i < 10; ++i) {
                const auto w = product_weights(g, one, a + (b - a) * u(rng)).w;
                for (std::size_t j = 0; j <= n; ++j) {
                    const double expect = (j == 0 || j == n) ? g.h / 2 : g.h;
                    worst = std::max(worst, ulps(w[j], expect));
                }
            }
        }
    }
    o.require(worst <= 2, "max ulp distance " + std::to_string(worst));
    if (o.pass) o.detail = "max ulp distance " + std::to_string(worst);
    return o;
}

Outcome constant_solution_example() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = constant_solution_problem();
    const auto g = make_grid(0, 1, 50);
    const auto ld = ld_solve(p, g, LDSettings{}).report;
    double worst = 0.0;
    for (const auto& r : ld.records) worst = std::max(worst, r.true_error.value_or(INFINITY));
    o.require(worst <= 1e-10, "LD max error " + sci(worst));

    const auto dl = dl_solve(p, g, DLSettings{});
    auto st = dl_init(p, g);
    double dev = 0.0;
    for (int i = 0; i < 5; ++i) st = dl_newton_step(st, p);
    for (double x : st.X) dev = std::max(dev, std::abs(x - 1.0));
    const double res = dl.report.records.back().residual_norm;
    o.require(dl.report.status == SolveStatus::Converged, "DL not converged");
    o.require(res <= 1e-12, "DL residual " + sci(res));
    o.require(dev <= 1e-12, "DL nodal deviation from ones " + sci(dev));
    const double secs = seconds_since(t0);
    o.require(secs <= 30.0, "runtime " + sci(secs) + " s");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("LD max error ") + sci(worst) +
                ", DL residual " + sci(res) + ", " + sci(secs) + " s";
    return o;
}

Outcome plateau_vs_decay() {
    Outcome o;
    auto& runs = manufactured_runs();
    const auto& recs = runs.dl50.records;
    const double plateau = *recs.back().true_error;
    double change = 0.0;
    o.require(recs.size() >= 6, "DL has fewer than 5 iterations");
    for (std::size_t k = recs.size() - 5; k < recs.size(); ++k)
        change = std::max(change, std::abs(*recs[k].true_error - plateau) / plateau);
    const double ld = *runs.ld[50].terminal_error();
    o.require(plateau > 0.0, "DL plateau is zero");
    o.require(change < 0.05, "DL plateau drift " + sci(change));
    o.require(ld <= plateau / 100, "LD " + sci(ld) + " vs DL/100 " + sci(plateau / 100));
    o.require(ld <= 1e-6, "LD terminal " + sci(ld));
    o.require(runs.seconds <= 120.0, "runtime " + sci(runs.seconds) + " s");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("E_DL ") + sci(plateau) + ", LD " +
                sci(ld) + ", drift " + sci(change) + ", " + sci(runs.seconds) + " s";
    return o;
}

Outcome n_independence() {
    Outcome o;
    auto& runs = manufactured_runs();
    const double plateau = *runs.dl50.records.back().true_error;
    double lo = INFINITY, hi = 0.0;
    std::string list;
    for (const auto& [n, rep] : runs.ld) {
        const double e = *rep.terminal_error();
        lo = std::min(lo, e);
        hi = std::max(hi, e);
        list += " n=" + std::to_string(n) + ":" + sci(e);
    }
    o.require(hi <= 10 * lo, "spread " + sci(hi / lo));
    o.require(hi < plateau, "worst LD " + sci(hi) + " not below DL plateau " + sci(plateau));
    o.detail += (o.detail.empty() ? "" : ";") + list;
    return o;
}

Outcome geometric_decay() {
    Outcome o;
    auto& runs = manufactured_runs();
    std::optional<int> prev_iters;
    std::string list;
    for (const auto& [n, rep] : runs.ld) {
        const double floor = *rep.terminal_error();
        double worst = 0.0;
        for (std::size_t k = 0; k + 1 < rep.records.size(); ++k) {
            const double e0 = *rep.records[k].true_error;
            const double e1 = *rep.records[k + 1].true_error;
            if (e1 > 10 * floor) worst = std::max(worst, e1 / e0);
        }
        o.require(worst < 1.0, "n=" + std::to_string(n) + " ratio " + sci(worst));
        const auto iters = iterations_to_reach(rep, 1e-6);
        o.require(iters.has_value(), "n=" + std::to_string(n) + " never reaches 1e-6");
        if (iters && prev_iters) o.require(*iters <= *prev_iters, "iterations increase at n=" + std::to_string(n));
        if (iters) prev_iters = iters;
        list += " n=" + std::to_string(n) + ": max ratio " + sci(worst) + ", iters " +
                (iters ? std::to_string(*iters) : "-");
    }
    o.detail += (o.detail.empty() ? "" : ";") + list;
    return o;
}

Outcome dl_order() {
    Outcome o;
    const auto p = cos_square_problem();
    std::vector<double> errs;
    for (std::size_t n : {16u, 32u, 64u}) errs.push_back(*dl_solve(p, make_grid(0, 1, n), DLSettings{}).report.terminal_error());
    const double o1 = std::log2(errs[0] / errs[1]);
    const double o2 = std::log2(errs[1] / errs[2]);
    o.require(o1 >= 1.5 && o2 >= 1.5, "orders " + sci(o1) + ", " + sci(o2));
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("errors ") + sci(errs[0]) + " " +
                sci(errs[1]) + " " + sci(errs[2]) + ", orders " + sci(o1) + " " + sci(o2);
    return o;
}

Outcome affine_one_step() {
    Outcome o;
    // phi0 = 0 makes K(phi0) vanish; a linear phi0 with L = 1 is integrated exactly by both rules.
    const auto varying = make_problem(0, 1, SingularKernel::logarithmic(),
                                      [](double s, double t) { return 1.0 + 0.5 * std::cos(s - t); },
                                      nonlinearity("identity"), [](double s) { return std::exp(s) - s * s; });
    const auto unit = make_problem(0, 1, SingularKernel::algebraic_power(0.5),
                                   [](double, double) { return 1.0; }, nonlinearity("identity"),
                                   [](double s) { return std::sin(3 * s); });
    const std::vector<std::pair<const HammersteinProblem*, ScalarFunction>> cases{
        {&varying, [](double) { return 0.0; }},
        {&unit, [](double) { return 0.0; }},
        {&unit, [](double t) { return 1.0 - 2.0 * t; }},
    };
    double worst = 0.0;
    for (std::size_t n : {16u, 32u, 64u}) {
        const auto g = make_grid(0, 1, n);
        for (const auto& [p, phi0] : cases) {
            const auto ref = oracle::linear_nystrom(*p, g);
            const auto s1 = ld_step(ld_init(*p, g, phi0, LDSettings{}), *p);
            for (std::size_t j = 0; j <= n; ++j) worst = std::max(worst, std::abs(s1.nodal[j] - ref[j]));
        }
    }
    o.require(worst <= 1e-10, "max deviation " + sci(worst));
    if (o.pass) o.detail = "max deviation from direct solve " + sci(worst);
    return o;
}

Outcome floors() {
    Outcome o;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> size(1, 120);
    double worst_lu = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = size(rng);
        DenseMatrix M(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                M(i, j) = u(rng) + (i == j ? 0.5 * static_cast<double>(n) : 0.0);
        std::vector<double> xs(n);
        for (auto& v : xs) v = u(rng);
        const auto x = solve_dense(M, M * xs);
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(x[i] - xs[i]));
        worst_lu = std::max(worst_lu, d / norm_inf(xs));
    }
    o.require(worst_lu <= 1e-13, "dense round trip " + sci(worst_lu));

    QuadratureConfig fine;
    QuadratureConfig sub;
    sub.mode = KMode::SingularitySubtraction;
    // Iterates resolved on a refinement of the fine grid, so linear interpolation between
    // samples does not dominate the comparison.
    const auto pts = make_grid(0, 1, 16 * fine.n_fine).nodes;
    double worst_k = 0.0;
    std::uniform_real_distribution<double> v(0.0, 1.0);
    const std::vector<SingularKernel> kernels{SingularKernel::logarithmic(), SingularKernel::algebraic_power(0.5)};
    for (const auto& k : kernels) {
        for (const char* F : {"square", "cubic", "sin_pi"}) {
            const auto p = make_problem(0, 1, k, [](double s, double t) { return std::exp(s * t); },
                                        nonlinearity(F), [](double) { return 0.0; });
            for (int trial = 0; trial < 5; ++trial) {
                const double amp = 0.5 * v(rng), freq = 1 + 2 * v(rng), shift = v(rng);
                const auto x = SampledFunction::sample(pts, [=](double t) { return shift + amp * std::sin(freq * t); });
                for (int i = 0; i < 10; ++i) {
                    const double s = v(rng);
                    worst_k = std::max(worst_k, std::abs(eval_K(p, x, s, fine) - eval_K(p, x, s, sub)));
                }
            }
        }
    }
    o.require(worst_k <= 1e-6, "K mode gap " + sci(worst_k));
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("LU ") + sci(worst_lu) + ", K mode gap " + sci(worst_k);
    return o;
}

int run_cli(std::vector<std::string> args, std::string* err_text = nullptr) {
    args.insert(args.begin(), "hammerstein");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (err_text) *err_text = err.str();
    return code;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism_and_io() {
    Outcome o;
    const auto root = fs::temp_directory_path() / "hammerstein_acceptance";
    fs::remove_all(root);
    fs::create_directories(root / "a");
    fs::create_directories(root / "b");
    const auto cfg = root / "cos.json";
    std::ofstream(cfg) << R"({"schema": 1, "kernel": "log", "L": "one", "F": "square",
                              "exact": "cos", "y": "manufactured", "n": 50, "seed": 17})";
    const int ca = run_cli({"compare", "--config", cfg.string(), "--out", (root / "a").string()});
    const int cb = run_cli({"compare", "--config", cfg.string(), "--out", (root / "b").string()});
    o.require(ca == 0 && cb == 0, "compare exit codes " + std::to_string(ca) + "," + std::to_string(cb));
    const auto csv_a = slurp(root / "a" / "compare.csv");
    o.require(!csv_a.empty() && csv_a == slurp(root / "b" / "compare.csv"), "CSV differs between runs");

    const std::vector<std::pair<std::string, std::string>> bad{
        {R"({"kernel": "log", "F": "tanh", "y": 1, "n": 5})", "config.F"},
        {R"({"kernel": "power", "beta": 1.2, "F": "square", "y": 1, "n": 5})", "config.beta"},
        {R"({"kernel": "log", "F": "square", "y": 1, "n": 0})", "config.n"},
        {R"({"kernel": "log", "F": "square", "y": 1, "n": 5, "quad": {"mode": "x"}})", "config.quad.mode"},
        {R"({"kernel": "log", "F": "square", "y": 1, "n": 5, "tol": 0})", "config.tol"},
        {R"({"kernel": "log", "F": "square", "y": 1, "n": 5, "extra": true})", "config.extra"},
        {R"({"F": "square", "y": 1, "n": 5})", "config.kernel"},
    };
    int idx = 0;
    for (const auto& [text, field] : bad) {
        const auto path = root / ("bad" + std::to_string(idx++) + ".json");
        std::ofstream(path) << text;
        std::string err;
        const int code = run_cli({"compare", "--config", path.string(), "--out", root.string()}, &err);
        o.require(code == cli::kExitConfig, field + " exit " + std::to_string(code));
        o.require(err.find(field) != std::string::npos, field + " missing from message '" + err + "'");
    }
    if (o.pass) o.detail = "CSV " + std::to_string(csv_a.size()) + " bytes identical; " + std::to_string(bad.size()) + " schema violations exit 2";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 weight correctness", weights_match_oracle},
        {"2 trapezoidal degeneration", trapezoidal_degeneration},
        {"3 constant-solution example", constant_solution_example},
        {"4 plateau vs decay", plateau_vs_decay},
        {"5 n-independent LD limit", n_independence},
        {"6 geometric decay", geometric_decay},
        {"7 DL order", dl_order},
        {"8 affine one-step exactness", affine_one_step},
        {"9 linear algebra and K floors", floors},
        {"10 determinism and I/O", determinism_and_io},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
