#pragma once

#include <optional>
#include <string>
#include <vector>

#include "packsim/charge_control.hpp"
#include "packsim/pack_topology.hpp"

namespace packsim {

struct PlannerConstraints {
    double i_max = 15.0;                    // charger current limit, amperes
    std::optional<double> v_max;            // charger voltage ceiling, checked against s * v_cv
    std::optional<double> power_max;        // supply power ceiling, watts
    bool require_cell_conservation = true;
};

void validate(const PlannerConstraints& constraints);

struct PlanEntry {
    Topology topology;
    double predicted_charge_time_h = 0.0;  // meaningful only when feasible
    bool feasible = true;
    std::optional<std::string> infeasibility_reason;
    double charge_current_a = 0.0;         // effective current used for the prediction
    double nominal_voltage_v = 0.0;
    double max_charge_voltage_v = 0.0;     // s * v_cv
};

/// Feasible entries first, ascending by predicted time (ties: smaller s), then the
/// infeasible ones ascending by s.
struct RankedPlan {
    std::vector<PlanEntry> entries;
};

/// Current the charger can actually push into the pack: i_max, further limited by
/// power_max / nominal pack voltage when a power ceiling is set.
double effective_current(const PackConfig& config, const PlannerConstraints& constraints);

/// Closed-form time to charge from empty to full at constant current:
///   p * capacity / (i_eff * eta_charge)
/// Exact for cc_only, a lower bound for cc_cv. Returns nullopt when i_eff <= 0.
std::optional<double> predict_charge_time(const PackConfig& config, const ChargerProfile& profile,
                                          const PlannerConstraints& constraints);

RankedPlan rank(long long n_cells, const CellSpec& cell, const ChargerProfile& profile,
                const PlannerConstraints& constraints);

struct VerificationRow {
    Topology topology;
    double predicted_h = 0.0;
    std::optional<double> simulated_h;  // nullopt if the simulation never reached full charge
    double relative_delta = 0.0;        // (simulated - predicted) / simulated
};

struct VerifySettings {
    std::size_t top_k = 5;
    double dt_s = 1.0;
    bool parallel = true;
};

/// Re-runs the top-k feasible entries through the time-domain simulator from an empty
/// pack. Rows follow plan order regardless of `parallel`.
std::vector<VerificationRow> verify_rank(const RankedPlan& plan, const CellSpec& cell,
                                         const ChargerProfile& profile,
                                         const PlannerConstraints& constraints,
                                         const VerifySettings& settings = {});

}  // namespace packsim
