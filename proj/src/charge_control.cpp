#include "packsim/charge_control.hpp"

#include <algorithm>

#include "packsim/errors.hpp"

namespace packsim {

std::string_view to_string(ChargeMode mode) {
    return mode == ChargeMode::cc_only ? "cc_only" : "cc_cv";
}

ChargeMode parse_charge_mode(std::string_view text) {
    if (text == "cc_only") return ChargeMode::cc_only;
    if (text == "cc_cv") return ChargeMode::cc_cv;
    throw InvalidSpec("unknown charge mode '" + std::string(text) +
                      "' (expected cc_only or cc_cv)");
}

std::string_view to_string(Phase phase) {
    return phase == Phase::charging ? "charging" : "discharging";
}

ChargerProfile paper_profile(double i_charge) {
    ChargerProfile profile;
    profile.i_charge = i_charge;
    profile.mode = ChargeMode::cc_only;
    profile.eta_charge = kPaperEtaCharge;
    return profile;
}

ChargerProfile default_profile(double i_charge) {
    ChargerProfile profile;
    profile.i_charge = i_charge;
    return profile;
}

void validate(const ChargerProfile& profile) {
    if (!(profile.i_charge >= 0.0)) throw InvalidSpec("i_charge must be ≥ 0");
    if (!(profile.discharge_current() >= 0.0)) throw InvalidSpec("i_discharge must be ≥ 0");
    if (profile.i_cutoff && !(*profile.i_cutoff >= 0.0))
        throw InvalidSpec("i_cutoff must be ≥ 0");
    if (!(profile.soc_low >= 0.0 && profile.soc_low < profile.soc_high &&
          profile.soc_high <= 1.0))
        throw InvalidSpec("thresholds must satisfy 0 ≤ soc_low < soc_high ≤ 1");
    if (!(profile.eta_charge > 0.0 && profile.eta_charge <= 1.0))
        throw InvalidSpec("eta_charge must lie in (0, 1]");
}

bool in_cv_region(const ChargerProfile& profile, const PackConfig& config, double soc) {
    if (profile.mode == ChargeMode::cc_only) return false;
    const CellSpec& cell = config.cell;
    if (cell.r_internal_ohm < kMinTaperResistance) return ocv(cell, soc) >= cell.v_cv;
    return terminal_voltage(cell, soc, profile.i_charge / config.p()) > cell.v_cv;
}

double cc_cv_command(const ChargerProfile& profile, const PackConfig& config, double soc) {
    if (!in_cv_region(profile, config, soc)) return profile.i_charge;
    const CellSpec& cell = config.cell;
    if (cell.r_internal_ohm < kMinTaperResistance) return 0.0;
    const double taper = config.p() * (cell.v_cv - ocv(cell, soc)) / cell.r_internal_ohm;
    return std::clamp(taper, 0.0, profile.i_charge);
}

RelayState relay_step(const RelayState& state, double soc, const ChargerProfile& profile) {
    if (state.phase == Phase::charging && soc >= profile.soc_high) return {Phase::discharging};
    if (state.phase == Phase::discharging && soc <= profile.soc_low) return {Phase::charging};
    return state;
}

double commanded_current(const RelayState& state, const ChargerProfile& profile,
                         const PackConfig& config, double soc) {
    if (state.phase == Phase::discharging) return -profile.discharge_current();
    return cc_cv_command(profile, config, soc);
}

}  // namespace packsim
