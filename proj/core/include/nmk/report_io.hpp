#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nmk/counterexample.hpp"
#include "nmk/measure.hpp"
#include "nmk/monte_carlo.hpp"

namespace nmk {

/// One row of the analyze trajectory table.
struct TrajectoryRow {
    double t = 0.0;
    double q = 0.0;
    double abs_q = 0.0;
    std::optional<double> gamma;  // empty at pole markers, printed as NaN
    double dk = 0.0;
};

/// CSV schema: t,q,abs_q,gamma,dk with a mandatory header; floats carry 17
/// significant digits so identical runs are byte-identical.
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows);

/// CSV schema: param,n_c,tail_bound,horizon.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Versioned JSON report (schema field = 1) for an analyze run.
std::string analyze_report_json(const std::string& wtd, const NonMarkovReport& report);

/// Versioned JSON report for a counterexample demonstration.
std::string demonstration_report_json(const std::string& gamma1, const std::string& gamma2,
                                      const DemonstrationReport& report);

/// Versioned JSON summary for a Monte Carlo cross-check.
std::string mc_check_report_json(const std::string& wtd, const EmpiricalQ& emp,
                                 double max_normalized_deviation, double threshold);

}  // namespace nmk
