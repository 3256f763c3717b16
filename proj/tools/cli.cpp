#include "cli.hpp"

#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hammerstein/config.hpp"
#include "hammerstein/errors.hpp"
#include "hammerstein/experiment.hpp"
#include "hammerstein/quadrature.hpp"
#include "hammerstein/report.hpp"

namespace hammerstein::cli {
namespace {

void print_summary(std::ostream& out, const SolveReport& r) {
    out << r.method << ": status=" << to_string(r.status) << " iterations=" << r.records.back().k;
    if (const auto e = r.terminal_error()) out << " true_error=" << format_double(*e);
    out << " residual=" << format_double(r.records.back().residual_norm) << '\n';
    if (!r.message.empty()) out << "  " << r.message << '\n';
}

int weights_command(std::ostream& out, const std::string& kernel, double beta, const std::string& H,
                    double a, double b, std::size_t n, double s) {
    const SingularKernel k = kernel == "log"     ? SingularKernel::logarithmic()
                             : kernel == "power" ? SingularKernel::algebraic_power(beta)
                                                 : SingularKernel::smooth(kernel_function(H), H);
    const Grid grid = make_grid(a, b, n);
    const auto wv = product_weights(grid, k, s);
    out << "j,t_j,w_j\n";
    double sum = 0.0;
    for (std::size_t j = 0; j < wv.w.size(); ++j) {
        out << j << ',' << format_double(grid.nodes[j]) << ',' << format_double(wv.w[j]) << '\n';
        sum += wv.w[j];
    }
    out << "# sum=" << format_double(sum) << " moment0=" << format_double(moment0(k, s, a, b))
        << '\n';
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weakly singular Hammerstein equation solver"};
    app.require_subcommand(1);
    std::string out_dir = ".";
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();

    std::string config_path;
    auto* solve = app.add_subcommand("solve", "Run the solver(s) selected in the config");
    solve->add_option("--config", config_path, "JSON run configuration")->required();
    solve->add_option("--out", out_dir, "Output directory");

    auto* compare = app.add_subcommand("compare", "Run both solvers on the same problem and grid");
    compare->add_option("--config", config_path, "JSON run configuration")->required();
    compare->add_option("--out", out_dir, "Output directory");

    std::vector<std::size_t> n_list;
    auto* nsweep = app.add_subcommand("nsweep", "Run the LD solver for several grid sizes");
    nsweep->add_option("--config", config_path, "JSON run configuration")->required();
    nsweep->add_option("--n", n_list, "Comma-separated grid sizes")->delimiter(',');
    nsweep->add_option("--out", out_dir, "Output directory");

    std::string kernel = "log";
    std::string H = "one";
    double beta = 0.5, a = 0.0, b = 1.0, s = 0.5;
    std::size_t n = 8;
    auto* weights = app.add_subcommand("weights", "Print product-integration weights at one point");
    weights->add_option("--kernel", kernel, "log | power | smooth")
        ->check(CLI::IsMember({"log", "power", "smooth"}));
    weights->add_option("--beta", beta, "Exponent for the power kernel");
    weights->add_option("--H", H, "Smooth kernel name");
    weights->add_option("--n", n, "Subinterval count")->check(CLI::PositiveNumber);
    weights->add_option("--s", s, "Evaluation point");
    weights->add_option("--a", a, "Left endpoint");
    weights->add_option("--b", b, "Right endpoint");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (weights->parsed()) return weights_command(out, kernel, beta, H, a, b, n, s);

        const RunConfig cfg = validate_config(config_path);
        out << "effective config:\n" << effective_config_json(cfg) << '\n';

        if (nsweep->parsed()) {
            std::vector<std::size_t> list = n_list;
            if (list.empty()) list = cfg.n_list.empty() ? std::vector<std::size_t>{cfg.n} : cfg.n_list;
            const auto res = run_nsweep(cfg, list, out_dir);
            out << "n,iterations_to_eps,terminal_error,status\n";
            for (const auto& e : res.entries) {
                const auto term = e.report.terminal_error();
                out << e.n << ',' << (e.iterations_to_eps ? std::to_string(*e.iterations_to_eps) : "")
                    << ',' << (term ? format_double(*term) : "") << ','
                    << to_string(e.report.status) << '\n';
            }
            out << "wrote " << res.csv.string() << ", " << res.summary.string() << '\n';
            return res.fatal() ? kExitSolver : kExitOk;
        }

        RunConfig run_cfg = cfg;
        if (compare->parsed()) run_cfg.solver = SolverSelection::Both;
        const auto res = run_compare(run_cfg, out_dir, compare->parsed() ? "compare" : "solve");
        if (res.ld) print_summary(out, res.ld->report);
        if (res.dl) print_summary(out, res.dl->report);
        out << "wrote " << res.csv.string() << ", " << res.script.string() << '\n';
        return res.fatal() ? kExitSolver : kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "solver error: " << e.what() << '\n';
        return kExitSolver;
    }
}

}  // namespace hammerstein::cli
