#include "hammerstein/report.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "hammerstein/errors.hpp"

namespace hammerstein {

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Converged:
            return "converged";
        case SolveStatus::MaxIter:
            return "max_iter";
        case SolveStatus::Singular:
            return "singular";
    }
    return "unknown";
}

std::optional<double> SolveReport::terminal_error() const {
    if (records.empty()) return std::nullopt;
    return records.back().true_error;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::optional<double> parse_opt(const std::string& field, int line) {
    if (field.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size())
        throw DomainError("csv line " + std::to_string(line) + ": bad number '" + field + "'");
    return v;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

void write_report_csv_header(std::ostream& os) {
    os << "method,k,step_norm,residual_norm,true_error,wall_ms\n";
}

void write_report_csv_rows(std::ostream& os, const SolveReport& report) {
    for (const auto& r : report.records) {
        os << report.method << ',' << r.k << ',' << opt(r.step_norm) << ','
           << format_double(r.residual_norm) << ',' << opt(r.true_error) << ',' << opt(r.wall_ms)
           << '\n';
    }
}

std::vector<SolveReport> parse_report_csv(std::istream& is) {
    std::vector<SolveReport> reports;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line.rfind("method,k,step_norm", 0) != 0)
                throw DomainError("csv: missing header row");
            header_seen = true;
            continue;
        }
        const auto f = split(line);
        if (f.size() != 6)
            throw DomainError("csv line " + std::to_string(lineno) + ": expected 6 fields");
        IterationRecord rec;
        const auto [kend, kerr] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), rec.k);
        if (kerr != std::errc{} || kend != f[1].data() + f[1].size() || f[1].empty())
            throw DomainError("csv line " + std::to_string(lineno) + ": bad k '" + f[1] + "'");
        rec.step_norm = parse_opt(f[2], lineno);
        const auto res = parse_opt(f[3], lineno);
        if (!res) throw DomainError("csv line " + std::to_string(lineno) + ": residual missing");
        rec.residual_norm = *res;
        rec.true_error = parse_opt(f[4], lineno);
        rec.wall_ms = parse_opt(f[5], lineno);

        SolveReport* target = nullptr;
        for (auto& r : reports)
            if (r.method == f[0]) target = &r;
        if (!target) {
            reports.push_back({});
            target = &reports.back();
            target->method = f[0];
        }
        target->records.push_back(rec);
    }
    return reports;
}

}  // namespace hammerstein
