#include "packsim/soc_estimator.hpp"

#include "packsim/errors.hpp"

namespace packsim {

double soc_increment(double i_pack, double dt_s, double capacity_ah, double eta_charge) {
    if (!(dt_s > 0.0)) throw DomainError("dt must be > 0");
    if (!(capacity_ah > 0.0)) throw DomainError("capacity must be > 0");
    if (!(eta_charge > 0.0 && eta_charge <= 1.0)) throw DomainError("eta_charge must lie in (0, 1]");
    const double k = i_pack > 0.0 ? eta_charge : 1.0;
    return k * i_pack * dt_s / (3600.0 * capacity_ah);
}

SocState coulomb_step(const SocState& state, double i_pack, double dt_s, double capacity_ah,
                      double eta_charge) {
    const double raw = state.soc + soc_increment(i_pack, dt_s, capacity_ah, eta_charge);
    SocState next;
    if (raw > 1.0) {
        next.soc = 1.0;
        next.saturated_high = true;
    } else if (raw < 0.0) {
        next.soc = 0.0;
        next.saturated_low = true;
    } else {
        next.soc = raw;
    }
    return next;
}

}  // namespace packsim
