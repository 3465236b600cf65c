#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "packsim/pack_topology.hpp"

namespace packsim {

enum class ChargeMode { cc_only, cc_cv };

std::string_view to_string(ChargeMode mode);
ChargeMode parse_charge_mode(std::string_view text);  // "cc_only" | "cc_cv"

/// Charger setpoints and cycling thresholds. All currents are pack-level amperes.
struct ChargerProfile {
    double i_charge = 15.0;
    std::optional<double> i_discharge;  // magnitude; defaults to i_charge
    ChargeMode mode = ChargeMode::cc_cv;
    std::optional<double> i_cutoff;     // CV termination; defaults to cell capacity / 20
    double soc_high = 1.0;              // relay switches to discharging at or above this
    double soc_low = 0.0;               // relay switches to charging at or below this
    double eta_charge = 1.0;

    double discharge_current() const { return i_discharge.value_or(i_charge); }
    double cutoff_current(const CellSpec& cell) const {
        return i_cutoff.value_or(cell.capacity_ah / 20.0);
    }
};

/// Charge acceptance that makes a 92S9P pack of 23.35 Ah cells reach full charge
/// in 16.2 h at 15 A: 210.15 / (16.2 * 15).
inline constexpr double kPaperEtaCharge = 0.86481;

/// cc_only at eta = kPaperEtaCharge, relay cycling over the full [0, 1] range.
ChargerProfile paper_profile(double i_charge);
/// cc_cv at eta = 1, relay cycling over the full [0, 1] range.
ChargerProfile default_profile(double i_charge);

void validate(const ChargerProfile& profile);

enum class Phase { charging, discharging };
std::string_view to_string(Phase phase);

struct RelayState {
    Phase phase = Phase::charging;
    friend bool operator==(const RelayState&, const RelayState&) = default;
};

// Below this the CV taper degenerates to a hard cutoff at ocv >= v_cv.
inline constexpr double kMinTaperResistance = 1e-9;

/// Pack charging current in [0, i_charge] for the given SOC. In cc_cv mode the current
/// drops to p * (v_cv - ocv) / r once the terminal voltage at i_charge would pass v_cv.
double cc_cv_command(const ChargerProfile& profile, const PackConfig& config, double soc);

/// True when cc_cv_command is limited by the voltage ceiling rather than i_charge.
bool in_cv_region(const ChargerProfile& profile, const PackConfig& config, double soc);

/// Two-threshold switch; the phase is retained between the thresholds.
RelayState relay_step(const RelayState& state, double soc, const ChargerProfile& profile);

/// Signed pack current: +cc_cv_command while charging, -i_discharge while discharging.
double commanded_current(const RelayState& state, const ChargerProfile& profile,
                         const PackConfig& config, double soc);

}  // namespace packsim
