#pragma once

namespace packsim {

struct SocState {
    double soc = 0.0;
    bool saturated_high = false;  // latest unclamped update went above 1
    bool saturated_low = false;   // latest unclamped update went below 0
};

/// One Coulomb-counting step.
///
///   dsoc = k * i_pack * dt / (3600 * capacity),  k = eta_charge if i_pack > 0 else 1
///
/// The result is clamped to [0, 1]; the saturation flags report whether this step
/// was clamped. Throws DomainError for dt <= 0, capacity <= 0 or eta outside (0, 1].
SocState coulomb_step(const SocState& state, double i_pack, double dt_s, double capacity_ah,
                      double eta_charge);

/// The unclamped increment used by coulomb_step.
double soc_increment(double i_pack, double dt_s, double capacity_ah, double eta_charge);

}  // namespace packsim
