#include "hammerstein/experiment.hpp"

#include <algorithm>

#include <fstream>

#include "hammerstein/errors.hpp"

namespace hammerstein {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_compare_script(const fs::path& path, const std::string& csv_name,
                          const std::vector<std::string>& methods) {
    auto out = open_out(path);
    out << "# gnuplot script: log10(true_error) against Newton iteration k\n"
        << "set datafile separator ','\n"
        << "set key top right\n"
        << "set xlabel 'k'\n"
        << "set ylabel 'log10(true error)'\n"
        << "set grid\n"
        << "plot ";
    for (std::size_t i = 0; i < methods.size(); ++i) {
        out << (i ? ", \\\n     " : "") << "'" << csv_name
            << "' skip 1 using 2:(strcol(1) eq '" << methods[i]
            << "' && strlen(strcol(5)) > 0 ? log10($5) : 1/0) with linespoints title '"
            << methods[i] << "'";
    }
    out << "\npause -1\n";
}

}  // namespace

bool CompareOutput::fatal() const {
    return (ld && ld->report.status == SolveStatus::Singular) ||
           (dl && dl->report.status == SolveStatus::Singular);
}

bool SweepOutput::fatal() const {
    for (const auto& e : entries)
        if (e.report.status == SolveStatus::Singular) return true;
    return false;
}

std::optional<int> iterations_to_reach(const SolveReport& report, double eps) {
    for (const auto& r : report.records)
        if (r.true_error && *r.true_error <= eps) return r.k;
    return std::nullopt;
}

CompareOutput run_compare(const RunConfig& cfg, const fs::path& out_dir, const std::string& prefix) {
    fs::create_directories(out_dir);
    const HammersteinProblem problem = build_problem(cfg);
    const Grid grid = make_grid(cfg.a, cfg.b, cfg.n);

    CompareOutput out;
    out.config_echo = out_dir / (prefix + "_config.json");
    open_out(out.config_echo) << effective_config_json(cfg) << '\n';

    std::optional<ScalarFunction> phi0;
    if (cfg.phi0) phi0 = cfg.phi0->resolve();
    if (cfg.solver != SolverSelection::DL) out.ld = ld_solve(problem, grid, ld_settings(cfg), phi0);
    if (cfg.solver != SolverSelection::LD) {
        std::optional<std::vector<double>> X0;
        if (phi0) {
            X0.emplace(grid.nodes.size());
            std::transform(grid.nodes.begin(), grid.nodes.end(), X0->begin(), *phi0);
        }
        out.dl = dl_solve(problem, grid, dl_settings(cfg), std::move(X0));
    }

    out.csv = out_dir / (prefix + ".csv");
    out.script = out_dir / (prefix + ".gp");
    auto csv = open_out(out.csv);
    write_report_csv_header(csv);
    std::vector<std::string> methods;
    for (const auto* r : {&out.ld, &out.dl}) {
        if (!*r) continue;
        write_report_csv_rows(csv, (*r)->report);
        methods.push_back((*r)->report.method);
    }
    write_compare_script(out.script, out.csv.filename().string(), methods);
    return out;
}

SweepOutput run_nsweep(const RunConfig& cfg, std::span<const std::size_t> n_list,
                       const fs::path& out_dir) {
    if (n_list.empty()) throw ConfigError("args.n", "sweep list must not be empty");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 1) throw ConfigError("args.n", "sweep entries must be >= 1");
        if (i > 0 && !(n_list[i - 1] < n_list[i]))
            throw ConfigError("args.n", "sweep list must be strictly ascending");
    }
    fs::create_directories(out_dir);
    const HammersteinProblem problem = build_problem(cfg);
    std::optional<ScalarFunction> phi0;
    if (cfg.phi0) phi0 = cfg.phi0->resolve();

    SweepOutput out;
    for (std::size_t n : n_list) {
        auto res = ld_solve(problem, make_grid(cfg.a, cfg.b, n), ld_settings(cfg), phi0);
        out.entries.push_back({n, res.report, iterations_to_reach(res.report, cfg.epsilon)});
    }

    out.csv = out_dir / "nsweep.csv";
    out.summary = out_dir / "nsweep_summary.csv";
    out.script = out_dir / "nsweep.gp";
    {
        auto csv = open_out(out.csv);
        csv << "n,k,true_error\n";
        for (const auto& e : out.entries)
            for (const auto& r : e.report.records)
                csv << e.n << ',' << r.k << ',' << (r.true_error ? format_double(*r.true_error) : "")
                    << '\n';
    }
    {
        auto sum = open_out(out.summary);
        sum << "n,iterations_to_eps,terminal_error,status\n";
        for (const auto& e : out.entries) {
            const auto term = e.report.terminal_error();
            sum << e.n << ',' << (e.iterations_to_eps ? std::to_string(*e.iterations_to_eps) : "")
                << ',' << (term ? format_double(*term) : "") << ',' << to_string(e.report.status)
                << '\n';
        }
    }
    {
        auto gp = open_out(out.script);
        gp << "# gnuplot script: LD error curves for increasing n\n"
           << "set datafile separator ','\n"
           << "set xlabel 'k'\n"
           << "set ylabel 'log10(true error)'\n"
           << "set grid\n"
           << "plot ";
        for (std::size_t i = 0; i < out.entries.size(); ++i) {
            const auto n = out.entries[i].n;
            gp << (i ? ", \\\n     " : "") << "'nsweep.csv' skip 1 using 2:($1 == " << n
               << " && strlen(strcol(3)) > 0 ? log10($3) : 1/0) with linespoints title 'n=" << n
               << "'";
        }
        gp << "\npause -1\n";
    }
    return out;
}

}  // namespace hammerstein
