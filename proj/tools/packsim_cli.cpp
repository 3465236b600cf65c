// packsim: simulate, compare and plan series/parallel battery pack configurations.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "packsim/config_planner.hpp"
#include "packsim/errors.hpp"
#include "packsim/report.hpp"
#include "packsim/scenario.hpp"

namespace {

using namespace packsim;

struct CommonOptions {
    std::vector<std::string> configs;
    std::vector<std::string> packs;
    std::string out;
    std::string format = "table";
    std::optional<double> dt;
    std::optional<double> duration_h;
    std::optional<double> current;
    std::optional<std::string> profile;
    bool serial = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool many) {
    if (many) {
        cmd->add_option("--config", opt.configs, "Scenario file(s)")->check(CLI::ExistingFile);
        cmd->add_option("--pack", opt.packs, "Pack configuration(s), e.g. 92S9P 46S18P 142S5P");
        cmd->add_flag("--serial", opt.serial, "Run scenarios one at a time");
    } else {
        cmd->add_option("--config", opt.configs, "Scenario file")->check(CLI::ExistingFile)->expected(0, 1);
        cmd->add_option("--pack", opt.packs, "Pack configuration, e.g. 92S9P")->expected(0, 1);
    }
    cmd->add_option("--out", opt.out, "Output file (default: stdout)");
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "svg", "table", "json"}));
    cmd->add_option("--dt", opt.dt, "Time step in seconds");
    cmd->add_option("--duration-h", opt.duration_h, "Simulated duration in hours");
    cmd->add_option("--current", opt.current, "Charge current in amperes");
    cmd->add_option("--profile", opt.profile, "Charger preset")
        ->check(CLI::IsMember({"paper", "default"}));
}

void apply_overrides(Scenario& scenario, const CommonOptions& opt) {
    if (opt.profile) apply_preset(scenario.charger, parse_profile_preset(*opt.profile));
    if (opt.current) scenario.charger.i_charge = *opt.current;
    if (opt.dt) scenario.sim.dt_s = *opt.dt;
    if (opt.duration_h) scenario.sim.duration_s = *opt.duration_h * 3600.0;
    validate(scenario);
}

std::vector<Scenario> build_scenarios(const CommonOptions& opt) {
    std::vector<Scenario> bases;
    for (const std::string& path : opt.configs) bases.push_back(load_scenario(path));
    if (bases.empty()) bases.push_back(baseline_scenario());

    std::vector<Scenario> out;
    for (const Scenario& base : bases) {
        if (opt.packs.empty()) {
            out.push_back(base);
            continue;
        }
        for (const std::string& pack : opt.packs) {
            Scenario s = base;
            reconfigure_scenario(s, parse_topology(pack));
            out.push_back(std::move(s));
        }
    }
    for (Scenario& s : out) apply_overrides(s, opt);
    return out;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write '" + path + "'");
    file << text;
}

int cmd_simulate(const CommonOptions& opt) {
    const Scenario scenario = build_scenarios(opt).front();
    const RunResult run = run_simulate(scenario);
    const std::size_t stride = decimation_stride(scenario.sample_interval_s, scenario.sim.dt_s);
    for (const std::string& w : run.report.warnings) std::cerr << "warning: " << w << '\n';

    if (opt.format == "csv")
        emit(time_series_csv(run.series, stride), opt.out);
    else if (opt.format == "svg")
        emit(time_series_svg(scenario.name, run.series, stride), opt.out);
    else if (opt.format == "json")
        emit(to_json(run.report).dump(2) + '\n', opt.out);
    else
        emit(report_table({CompareItem{scenario.name, run, std::nullopt}}), opt.out);
    return 0;
}

int cmd_compare(const CommonOptions& opt) {
    const std::vector<Scenario> scenarios = build_scenarios(opt);
    const std::vector<CompareItem> items = run_compare(scenarios, !opt.serial);

    // Decimate all traces on the coarsest grid requested by any scenario.
    std::size_t stride = 1;
    for (const Scenario& s : scenarios)
        stride = std::max(stride, decimation_stride(s.sample_interval_s, s.sim.dt_s));

    int status = 0;
    for (const CompareItem& item : items) {
        if (item.error) {
            std::cerr << "error: " << item.name << ": " << *item.error << '\n';
            status = 1;
        } else {
            for (const std::string& w : item.result->report.warnings)
                std::cerr << "warning: " << item.name << ": " << w << '\n';
        }
    }

    if (opt.format == "csv")
        emit(compare_csv(items, stride), opt.out);
    else if (opt.format == "svg")
        emit(compare_svg(items, stride), opt.out);
    else if (opt.format == "json")
        emit(to_json(items).dump(2) + '\n', opt.out);
    else
        emit(report_table(items), opt.out);
    return status;
}

struct PlanOptions {
    long long cells = 0;
    std::optional<std::string> config;
    std::optional<double> i_max;
    std::optional<double> v_max;
    std::optional<double> power_max;
    std::optional<std::string> profile;
    std::size_t verify = 0;
    std::optional<double> dt;
    std::string out;
    std::string format = "table";
    bool serial = false;
};

int cmd_plan(const PlanOptions& opt) {
    Scenario base = opt.config ? load_scenario(*opt.config) : baseline_scenario();
    if (opt.profile) apply_preset(base.charger, parse_profile_preset(*opt.profile));

    PlannerConstraints constraints;
    constraints.i_max = opt.i_max.value_or(base.charger.i_charge);
    constraints.v_max = opt.v_max;
    constraints.power_max = opt.power_max;

    const RankedPlan plan = rank(opt.cells, base.pack.cell, base.charger, constraints);
    std::vector<VerificationRow> verification;
    if (opt.verify > 0) {
        VerifySettings vs;
        vs.top_k = opt.verify;
        vs.dt_s = opt.dt.value_or(base.sim.dt_s);
        vs.parallel = !opt.serial;
        verification = verify_rank(plan, base.pack.cell, base.charger, constraints, vs);
    }

    if (opt.format == "json")
        emit(to_json(plan, verification).dump(2) + '\n', opt.out);
    else
        emit(plan_table(plan, verification), opt.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Series/parallel battery pack charge simulator and configuration planner"};
    app.require_subcommand(1);

    CommonOptions sim_opt;
    auto* simulate_cmd = app.add_subcommand("simulate", "Simulate one scenario");
    add_common(simulate_cmd, sim_opt, false);

    CommonOptions cmp_opt;
    auto* compare_cmd = app.add_subcommand("compare", "Simulate several scenarios side by side");
    add_common(compare_cmd, cmp_opt, true);

    PlanOptions plan_opt;
    auto* plan_cmd = app.add_subcommand("plan", "Rank S x P factorizations of a cell budget");
    plan_cmd->add_option("--cells", plan_opt.cells, "Cell budget")->required()->check(CLI::PositiveNumber);
    plan_cmd->add_option("--config", plan_opt.config, "Scenario file supplying cell and charger")
        ->check(CLI::ExistingFile);
    plan_cmd->add_option("--i-max", plan_opt.i_max, "Charger current limit (A)");
    plan_cmd->add_option("--v-max", plan_opt.v_max, "Charger voltage ceiling (V)");
    plan_cmd->add_option("--power-max", plan_opt.power_max, "Supply power ceiling (W)");
    plan_cmd->add_option("--profile", plan_opt.profile, "Charger preset")
        ->check(CLI::IsMember({"paper", "default"}));
    plan_cmd->add_option("--verify", plan_opt.verify, "Simulate the top K feasible entries");
    plan_cmd->add_option("--dt", plan_opt.dt, "Time step for --verify (s)");
    plan_cmd->add_option("--out", plan_opt.out, "Output file (default: stdout)");
    plan_cmd->add_option("--format", plan_opt.format, "Output format")
        ->check(CLI::IsMember({"table", "json"}));
    plan_cmd->add_flag("--serial", plan_opt.serial, "Verify one entry at a time");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate_cmd) return cmd_simulate(sim_opt);
        if (*compare_cmd) return cmd_compare(cmp_opt);
        if (*plan_cmd) return cmd_plan(plan_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
