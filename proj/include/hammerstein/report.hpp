#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hammerstein {

enum class SolveStatus { Converged, MaxIter, Singular };

const char* to_string(SolveStatus status);

/// One row per iterate k = 0, 1, 2, ... (k = 0 is the starting guess).
struct IterationRecord {
    int k = 0;
    std::optional<double> step_norm;   ///< ||x^{(k)} - x^{(k-1)}||_inf; absent at k = 0
    double residual_norm = 0.0;        ///< nodal residual of the nonlinear equation
    std::optional<double> true_error;  ///< sup over samples |phi^{(k)} - exact|, if exact known
    std::optional<double> wall_ms;     ///< cumulative wall time, when timing is recorded

    bool operator==(const IterationRecord&) const = default;
};

struct SolveReport {
    std::string method;  ///< "ld" or "dl"
    std::vector<IterationRecord> records;
    SolveStatus status = SolveStatus::MaxIter;
    std::size_t n = 0;
    std::size_t n_fine = 0;
    std::string mode;
    std::string message;  ///< diagnostic for a singular stop

    std::optional<double> terminal_error() const;
};

/// Columns: method,k,step_norm,residual_norm,true_error,wall_ms. Absent values are
/// empty fields; numbers use %.16e.
void write_report_csv_header(std::ostream& os);
void write_report_csv_rows(std::ostream& os, const SolveReport& report);

/// Parses CSV produced by write_report_csv_*; groups rows by method in order of
/// first appearance. Only the record fields round-trip. Throws DomainError on
/// malformed input.
std::vector<SolveReport> parse_report_csv(std::istream& is);

std::string format_double(double v);

}  // namespace hammerstein

#include "hammerstein/sampled_function.hpp"

namespace hammerstein {

struct SolveResult {
    SampledFunction solution;
    SolveReport report;
};

}  // namespace hammerstein
