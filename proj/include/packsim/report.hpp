#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "packsim/config_planner.hpp"
#include "packsim/scenario.hpp"
#include "packsim/sim_engine.hpp"

namespace packsim {

/// Summary of one simulated scenario.
struct RunReport {
    std::string config_name;
    Topology topology;
    std::optional<double> charge_time_h;  // present iff a full charge was reached
    std::size_t toggle_count = 0;
    double final_soc = 0.0;
    double peak_pack_voltage_v = 0.0;
    std::vector<std::string> warnings;
};

struct RunResult {
    Scenario scenario;
    TimeSeries series;
    RunReport report;
};

/// Outcome of one scenario inside a comparison; exactly one of result/error is set.
struct CompareItem {
    std::string name;
    std::optional<RunResult> result;
    std::optional<std::string> error;
};

RunReport summarize(const Scenario& scenario, const TimeSeries& series);

RunResult run_simulate(const Scenario& scenario);

/// Runs every scenario, concurrently when `parallel`; output order follows input order
/// and a failing scenario does not stop the others.
std::vector<CompareItem> run_compare(const std::vector<Scenario>& scenarios, bool parallel = true);

// --- CSV ---------------------------------------------------------------------

/// Header: time_s,mode,soc,pack_voltage_v,pack_current_a,cumulative_ah. Numbers use six
/// significant digits; every `stride`-th sample is written (the last one always is).
std::string time_series_csv(const TimeSeries& series, std::size_t stride);

/// Same columns prefixed with a `config` column, one block per successful scenario.
std::string compare_csv(const std::vector<CompareItem>& items, std::size_t stride);

struct CsvRow {
    double time_s;
    std::string mode;
    double soc;
    double pack_voltage_v;
    double pack_current_a;
    double cumulative_ah;
};

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<CsvRow> rows;
};

/// Reads back what time_series_csv wrote. Throws Error on malformed input.
CsvTable parse_time_series_csv(const std::string& text);

/// Samples between CSV rows for a given output interval (at least 1).
std::size_t decimation_stride(double sample_interval_s, double dt_s);

/// "charge_cc", "charge_cv", "discharge" or "idle".
std::string mode_label(const SimState& state);

// --- SVG ---------------------------------------------------------------------

/// SOC, pack voltage and pack current panels against time in hours.
std::string time_series_svg(const std::string& title, const TimeSeries& series, std::size_t stride);

/// The same three panels with one trace per scenario, plus a charge-time bar chart.
std::string compare_svg(const std::vector<CompareItem>& items, std::size_t stride);

// --- tables and structured output -----------------------------------------------

std::string report_table(const std::vector<CompareItem>& items);
std::string plan_table(const RankedPlan& plan, const std::vector<VerificationRow>& verification);

nlohmann::json to_json(const RunReport& report);
nlohmann::json to_json(const std::vector<CompareItem>& items);
nlohmann::json to_json(const RankedPlan& plan, const std::vector<VerificationRow>& verification);

}  // namespace packsim
