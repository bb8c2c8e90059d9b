#include "nmk/report_io.hpp"

#include <nlohmann/json.hpp>

#include "nmk/format.hpp"

namespace nmk {

using nlohmann::json;

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows) {
    out << "t,q,abs_q,gamma,dk\n";
    for (const auto& row : rows) {
        out << to_string_g17(row.t) << ',' << to_string_g17(row.q) << ','
            << to_string_g17(row.abs_q) << ',';
        out << (row.gamma ? to_string_g17(*row.gamma) : std::string("NaN"));
        out << ',' << to_string_g17(row.dk) << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "param,n_c,tail_bound,horizon\n";
    for (const auto& row : rows)
        out << to_string_g17(row.param) << ',' << to_string_g17(row.n_c) << ','
            << to_string_g17(row.tail_bound) << ',' << to_string_g17(row.horizon) << '\n';
}

namespace {

json report_to_json(const NonMarkovReport& report) {
    json intervals = json::array();
    for (const auto& [a, b] : report.increase_intervals) intervals.push_back(json::array({a, b}));
    return json{
        {"n_c", report.n_c},
        {"increase_intervals", std::move(intervals)},
        {"contributions", report.contributions},
        {"horizon", report.horizon},
        {"tail_bound", report.tail_bound},
        {"maximizing_pair",
         json::array({report.maximizing_pair.first, report.maximizing_pair.second})},
        {"zeros", report.zeros},
        {"extrema", report.extrema},
    };
}

}  // namespace

std::string analyze_report_json(const std::string& wtd, const NonMarkovReport& report) {
    json j = report_to_json(report);
    j["schema"] = 1;
    j["command"] = "analyze";
    j["wtd"] = wtd;
    return j.dump(2) + "\n";
}

std::string demonstration_report_json(const std::string& gamma1, const std::string& gamma2,
                                      const DemonstrationReport& report) {
    json j{
        {"schema", 1},
        {"command", "counterexample"},
        {"gamma1", gamma1},
        {"gamma2", gamma2},
        {"t_end", report.t_end},
        {"counterexample", report.is_counterexample},
        {"negative_rate_witness",
         json{{"time", report.witness_time},
              {"value", report.witness_value},
              // 1-based matrix entry, row then column
              {"entry", json::array({report.witness_row + 1, report.witness_col + 1})}}},
        {"max_closed_form_vs_ode", report.max_closed_vs_ode},
        {"dk_monotone", report.dk_monotone},
        {"p_divisible", report.p_divisible},
        {"verdict", report.verdict},
    };
    return j.dump(2) + "\n";
}

std::string mc_check_report_json(const std::string& wtd, const EmpiricalQ& emp,
                                 double max_normalized_deviation, double threshold) {
    json j{
        {"schema", 1},
        {"command", "mc-check"},
        {"wtd", wtd},
        {"n_traj", emp.n_traj},
        {"seed", emp.seed},
        {"grid", emp.grid},
        {"q_hat", emp.q_hat},
        {"stderr", emp.stderr_},
        {"max_normalized_deviation", max_normalized_deviation},
        {"threshold", threshold},
        {"pass", max_normalized_deviation <= threshold},
    };
    return j.dump(2) + "\n";
}

}  // namespace nmk
