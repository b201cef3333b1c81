#pragma once

#include "layerfv/cfvm.hpp"
#include "layerfv/correctors.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace layerfv {

/// One table cell of the error-sweep reproduction: the run parameters are
/// echoed so every row can be re-run exactly.
struct ExperimentRow {
    int N = 0; // cubic grid, N = M = L
    double t = 1.0;
    double eps = 0.0;
    Scheme scheme = Scheme::CFVM;
    std::optional<double> vel_l2; // empty on blow-up
    std::optional<double> p_l2;
    double dt = 0.0, theta = 0.0, alpha = 0.0;
    std::string status = "ok"; // ok | blowup | solver_failure
    double wall_clock_s = 0.0;

    friend bool operator==(const ExperimentRow& a, const ExperimentRow& b);
};

enum class TableFormat { Csv, Markdown };

/// Runs the cross product grids x eps x schemes; failures become blowup rows
/// and the sweep continues.  jobs > 1 runs rows on a small worker pool.
std::vector<ExperimentRow> run_table(const std::vector<int>& grids,
                                     const std::vector<double>& eps_list,
                                     const std::vector<Scheme>& schemes, const SimConfig& base,
                                     int jobs = 1);

void emit(const std::vector<ExperimentRow>& rows, TableFormat fmt, std::ostream& os);
void emit(const std::vector<ExperimentRow>& rows, TableFormat fmt, const std::string& path);

/// Parses a CSV produced by emit (round-trip inverse).
std::vector<ExperimentRow> parse_csv(std::istream& is);

struct ScalingStudyResult {
    ScalingQuantity quantity;
    ScalingStudy study;
};

/// eps power-law study of the named corrector norm; delegates to
/// correctors::scaling_slope.
ScalingStudyResult run_scaling_study(const std::vector<double>& eps_list, ScalingQuantity q,
                                     double alpha = 1.0, double quad_tol = 1e-9);

void emit_scaling(const ScalingStudyResult& r, std::ostream& os);

const char* scheme_name(Scheme s);
const char* quantity_name(ScalingQuantity q);

} // namespace layerfv
