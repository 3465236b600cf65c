#include "packsim/config_planner.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "packsim/errors.hpp"
#include "packsim/sim_engine.hpp"

namespace packsim {

void validate(const PlannerConstraints& constraints) {
    if (!(constraints.i_max > 0.0)) throw InvalidSpec("i_max must be > 0");
    if (constraints.v_max && !(*constraints.v_max > 0.0)) throw InvalidSpec("v_max must be > 0");
    if (constraints.power_max && !(*constraints.power_max > 0.0))
        throw InvalidSpec("power_max must be > 0");
}

double effective_current(const PackConfig& config, const PlannerConstraints& constraints) {
    double current = constraints.i_max;
    if (constraints.power_max)
        current = std::min(current, *constraints.power_max / pack_nominal_voltage(config));
    return current;
}

std::optional<double> predict_charge_time(const PackConfig& config, const ChargerProfile& profile,
                                          const PlannerConstraints& constraints) {
    const double current = effective_current(config, constraints);
    if (!(current > 0.0)) return std::nullopt;
    return pack_capacity(config) / (current * profile.eta_charge);
}

RankedPlan rank(long long n_cells, const CellSpec& cell, const ChargerProfile& profile,
                const PlannerConstraints& constraints) {
    validate(cell);
    validate(constraints);

    RankedPlan plan;
    for (const Topology& t : enumerate_factorizations(n_cells)) {
        const PackConfig config{t, cell};
        PlanEntry entry;
        entry.topology = t;
        entry.charge_current_a = effective_current(config, constraints);
        entry.nominal_voltage_v = pack_nominal_voltage(config);
        entry.max_charge_voltage_v = t.s * cell.v_cv;

        if (constraints.require_cell_conservation && t.total_cells() != n_cells) {
            entry.feasible = false;
            entry.infeasibility_reason = "cell count not conserved";
        } else if (constraints.v_max && entry.max_charge_voltage_v > *constraints.v_max) {
            entry.feasible = false;
            entry.infeasibility_reason = "voltage ceiling";
        } else if (auto hours = predict_charge_time(config, profile, constraints)) {
            entry.predicted_charge_time_h = *hours;
        } else {
            entry.feasible = false;
            entry.infeasibility_reason = "no charging current";
        }
        plan.entries.push_back(std::move(entry));
    }

    std::stable_sort(plan.entries.begin(), plan.entries.end(),
                     [](const PlanEntry& a, const PlanEntry& b) {
                         if (a.feasible != b.feasible) return a.feasible;
                         if (a.feasible && a.predicted_charge_time_h != b.predicted_charge_time_h)
                             return a.predicted_charge_time_h < b.predicted_charge_time_h;
                         return a.topology.s < b.topology.s;
                     });
    return plan;
}

namespace {

VerificationRow verify_entry(const PlanEntry& entry, const CellSpec& cell,
                             const ChargerProfile& profile, const VerifySettings& settings) {
    ChargerProfile charge = profile;
    charge.i_charge = entry.charge_current_a;
    charge.soc_low = 0.0;
    charge.soc_high = 1.0;

    SimSettings sim;
    sim.dt_s = settings.dt_s;
    sim.initial_soc = 0.0;
    sim.stop_after_full_charge = true;
    sim.record_samples = false;
    // CV taper adds time beyond the closed form; leave generous headroom.
    sim.duration_s = std::max(3.0 * entry.predicted_charge_time_h * 3600.0 + 3600.0, settings.dt_s);

    VerificationRow row;
    row.topology = entry.topology;
    row.predicted_h = entry.predicted_charge_time_h;
    row.simulated_h = charge_time(simulate(PackConfig{entry.topology, cell}, charge, sim));
    if (row.simulated_h)
        row.relative_delta = (*row.simulated_h - row.predicted_h) / *row.simulated_h;
    return row;
}

}  // namespace

std::vector<VerificationRow> verify_rank(const RankedPlan& plan, const CellSpec& cell,
                                         const ChargerProfile& profile,
                                         const PlannerConstraints& constraints,
                                         const VerifySettings& settings) {
    validate(constraints);
    std::vector<const PlanEntry*> selected;
    for (const PlanEntry& entry : plan.entries) {
        if (selected.size() >= settings.top_k) break;
        if (entry.feasible) selected.push_back(&entry);
    }

    std::vector<VerificationRow> rows;
    rows.reserve(selected.size());
    if (settings.parallel) {
        std::vector<std::future<VerificationRow>> jobs;
        for (const PlanEntry* entry : selected)
            jobs.push_back(std::async(std::launch::async, verify_entry, std::cref(*entry),
                                      std::cref(cell), std::cref(profile), std::cref(settings)));
        for (auto& job : jobs) rows.push_back(job.get());
    } else {
        for (const PlanEntry* entry : selected)
            rows.push_back(verify_entry(*entry, cell, profile, settings));
    }
    return rows;
}

}  // namespace packsim
