#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "packsim/charge_control.hpp"
#include "packsim/pack_topology.hpp"
#include "packsim/sim_engine.hpp"

namespace packsim {

/// A fully validated simulation scenario.
///
/// Document schema (INI-style, SI units). Comments must sit on their own line
/// starting with `;`; trailing text after a value is read as part of the value.
///
///     name = baseline                    label, defaults to the pack string
///     pack = 92S9P                       or a [pack] section, see below
///     reconfigure_to = 142S5P            optional; warns if the cell count changes
///
///     [cell]                             optional, defaults to the 23.35 Ah cell
///     radius = 0.023                     m
///     height = 0.08                      m
///     mass = 0.355                       kg
///     capacity = 23.35                   Ah
///     energy = 86.5                      Wh
///     r_internal = 0.02                  ohm
///     ocv_table = 0:3.0, 0.5:3.7, 1:4.2
///     v_cv = 4.2                         V per cell
///     v_min = 2.5                        V per cell
///
///     [pack]                             alternative to `pack = NSMP`
///     cells_in_parallel = 9
///     assemblies_in_series_per_module = 23
///     modules_in_series_per_assembly = 4
///     module_assemblies_in_series_per_pack = 1
///
///     [charger]                          required
///     profile = default                  default | paper, baseline for the keys below
///     i_charge = 15                      A, required
///     i_discharge = 15                   A, defaults to i_charge
///     mode = cc_cv                       cc_only | cc_cv
///     i_cutoff = 1.1675                  A, defaults to cell capacity / 20
///     soc_high = 1.0
///     soc_low = 0.0
///     eta_charge = 1.0
///
///     [sim]                              optional
///     duration_h = 48
///     dt = 1                             s
///     initial_soc = 0
///     sample_interval = 60               s, CSV/SVG decimation
///
/// Unknown keys and sections are rejected.
struct Scenario {
    std::string name;
    PackConfig pack;
    ChargerProfile charger;
    SimSettings sim;
    double sample_interval_s = 60.0;
    std::vector<std::string> warnings;
};

enum class ProfilePreset { default_, paper };
ProfilePreset parse_profile_preset(std::string_view text);

/// Forces the preset's mode, eta_charge and relay thresholds onto a profile.
void apply_preset(ChargerProfile& profile, ProfilePreset preset);

/// Parses and validates a scenario document. Throws ConfigError carrying the key path.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// The built-in scenario used when no document is given: 23.35 Ah cell, 92S9P, 15 A.
Scenario baseline_scenario();

/// Replaces the scenario's pack, recording a warning if the cell count changes.
void reconfigure_scenario(Scenario& scenario, const Topology& topology);

/// Re-checks every invariant; throws ConfigError.
void validate(const Scenario& scenario);

}  // namespace packsim
