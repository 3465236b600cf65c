#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "packsim/charge_control.hpp"
#include "packsim/pack_topology.hpp"
#include "packsim/soc_estimator.hpp"

namespace packsim {

enum class ControlRegion { cc, cv, idle };
std::string_view to_string(ControlRegion region);

enum class EventKind { full_charge_reached, relay_toggle, cc_to_cv, voltage_floor_hit };
std::string_view to_string(EventKind kind);

struct Event {
    double t_s;
    EventKind kind;
};

/// One recorded sample. `i_pack` is the current applied over [t, t + dt) and `v_pack`
/// is the terminal voltage at `soc` under that current.
struct SimState {
    double t_s = 0.0;
    SocState soc;
    RelayState relay;
    double i_pack = 0.0;
    double v_pack = 0.0;
    ControlRegion control_region = ControlRegion::idle;
    double cumulative_ah = 0.0;  // net charge into the pack since t = 0, charging positive
};

struct TimeSeries {
    double dt_s = 1.0;
    std::vector<SimState> samples;  // samples[k].t_s == k * dt_s
    std::vector<Event> events;      // ordered by time
};

struct SimSettings {
    double duration_s = 48.0 * 3600.0;
    double dt_s = 1.0;
    double initial_soc = 0.0;
    // Ends the run one step after the first full charge. The planner uses this to
    // avoid simulating the remainder of long horizons.
    bool stop_after_full_charge = false;
    // When false only the first and final samples are kept; events are always recorded.
    bool record_samples = true;
};

/// Fixed-step forward simulation. Each step updates the relay, commands a current,
/// advances the Coulomb counter and evaluates the pack voltage. Threshold crossings
/// (full charge, CV entry, CV cutoff) are timed by linear interpolation within the
/// step. Hitting the discharge voltage floor or the CV cutoff current switches the
/// relay immediately. Deterministic for identical inputs.
///
/// Throws DomainError for dt <= 0, dt > duration or initial_soc outside [0, 1];
/// InvalidSpec when the config or profile is invalid.
TimeSeries simulate(const PackConfig& config, const ChargerProfile& profile,
                    const SimSettings& settings);

/// Hours to the first full_charge_reached event, or nullopt if it never happened.
/// Throws DomainError if the series does not start in the charging phase.
std::optional<double> charge_time(const TimeSeries& series);

/// Relay toggle instants in hours.
std::vector<double> cycle_events(const TimeSeries& series);

}  // namespace packsim
