#include "packsim/sim_engine.hpp"

#include <algorithm>
#include <cmath>

#include "packsim/errors.hpp"

namespace packsim {

std::string_view to_string(ControlRegion region) {
    switch (region) {
        case ControlRegion::cc: return "cc";
        case ControlRegion::cv: return "cv";
        case ControlRegion::idle: return "idle";
    }
    return "idle";
}

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::full_charge_reached: return "full_charge_reached";
        case EventKind::relay_toggle: return "relay_toggle";
        case EventKind::cc_to_cv: return "cc_to_cv";
        case EventKind::voltage_floor_hit: return "voltage_floor_hit";
    }
    return "";
}

namespace {

// Per-cell voltage margin below the ceiling if the full CC setpoint were applied.
double cv_headroom(const ChargerProfile& profile, const PackConfig& config, double soc) {
    const CellSpec& cell = config.cell;
    if (cell.r_internal_ohm < kMinTaperResistance) return cell.v_cv - ocv(cell, soc);
    return cell.v_cv - terminal_voltage(cell, soc, profile.i_charge / config.p());
}

// Time at which a quantity moving linearly from a (at t0) to b (at t0 + dt) reaches level.
double crossing_time(double t0, double dt, double a, double b, double level) {
    if (a == b) return t0;
    return t0 + dt * std::clamp((level - a) / (b - a), 0.0, 1.0);
}

class Stepper {
public:
    Stepper(const PackConfig& config, const ChargerProfile& profile, const SimSettings& settings)
        : config_(config),
          profile_(profile),
          dt_(settings.dt_s),
          capacity_ah_(pack_capacity(config)),
          cutoff_a_(profile.cutoff_current(config.cell)) {
        state_.soc.soc = settings.initial_soc;
    }

    // Decides relay phase and current for the sample at time t; records events.
    void command(double t, bool first) {
        RelayState next = relay_step(state_.relay, state_.soc.soc, profile_);
        if (next != state_.relay && !first) toggle(t, next);
        state_.relay = next;

        evaluate();

        if (state_.relay.phase == Phase::charging && state_.control_region == ControlRegion::cv &&
            (state_.i_pack < cutoff_a_ || state_.i_pack <= 0.0)) {
            const double t_full = have_prev_charge_ ? crossing_time(t - dt_, dt_, prev_charge_i_,
                                                                    state_.i_pack, cutoff_a_)
                                                    : t;
            events_.push_back({t_full, EventKind::full_charge_reached});
            full_charge_seen_ = true;
            toggle(t, {Phase::discharging});
            evaluate();
        } else if (state_.relay.phase == Phase::discharging && state_.i_pack != 0.0 &&
                   terminal_voltage(config_.cell, state_.soc.soc, state_.i_pack / config_.p()) <
                       config_.cell.v_min) {
            events_.push_back({t, EventKind::voltage_floor_hit});
            toggle(t, {Phase::charging});
            evaluate();
        }

        if (state_.relay.phase == Phase::charging && profile_.mode == ChargeMode::cc_cv) {
            const double headroom = cv_headroom(profile_, config_, state_.soc.soc);
            if (have_prev_charge_ && prev_region_ == ControlRegion::cc &&
                state_.control_region == ControlRegion::cv) {
                events_.push_back(
                    {crossing_time(t - dt_, dt_, prev_headroom_, headroom, 0.0), EventKind::cc_to_cv});
            }
            prev_headroom_ = headroom;
            prev_charge_i_ = state_.i_pack;
            prev_region_ = state_.control_region;
            have_prev_charge_ = true;
        }
        state_.t_s = t;
    }

    // Applies the commanded current over [t, t + dt).
    void advance(double t) {
        const double before = state_.soc.soc;
        const double increment =
            soc_increment(state_.i_pack, dt_, capacity_ah_, profile_.eta_charge);
        state_.soc = coulomb_step(state_.soc, state_.i_pack, dt_, capacity_ah_, profile_.eta_charge);
        state_.cumulative_ah += state_.i_pack * dt_ / 3600.0;

        if (state_.relay.phase == Phase::charging && before < profile_.soc_high &&
            before + increment >= profile_.soc_high) {
            events_.push_back({t + dt_ * (profile_.soc_high - before) / increment,
                               EventKind::full_charge_reached});
            full_charge_seen_ = true;
        }
    }

    const SimState& state() const { return state_; }
    bool full_charge_seen() const { return full_charge_seen_; }
    std::vector<Event> take_events() { return std::move(events_); }

private:
    void toggle(double t, RelayState next) {
        events_.push_back({t, EventKind::relay_toggle});
        state_.relay = next;
        have_prev_charge_ = false;
    }

    void evaluate() {
        const double soc = state_.soc.soc;
        state_.i_pack = commanded_current(state_.relay, profile_, config_, soc);
        if (state_.i_pack == 0.0)
            state_.control_region = ControlRegion::idle;
        else if (state_.relay.phase == Phase::charging && in_cv_region(profile_, config_, soc))
            state_.control_region = ControlRegion::cv;
        else
            state_.control_region = ControlRegion::cc;
        state_.v_pack = config_.s() * terminal_voltage(config_.cell, soc, state_.i_pack / config_.p());
    }

    const PackConfig& config_;
    const ChargerProfile& profile_;
    const double dt_;
    const double capacity_ah_;
    const double cutoff_a_;

    SimState state_;
    std::vector<Event> events_;
    bool full_charge_seen_ = false;

    // Previous charging sample, for interpolating CV entry and cutoff.
    bool have_prev_charge_ = false;
    double prev_headroom_ = 0.0;
    double prev_charge_i_ = 0.0;
    ControlRegion prev_region_ = ControlRegion::idle;
};

}  // namespace

TimeSeries simulate(const PackConfig& config, const ChargerProfile& profile,
                    const SimSettings& settings) {
    validate(config.cell);
    validate(config.topology);
    validate(profile);
    if (!(settings.dt_s > 0.0)) throw DomainError("dt must be > 0");
    if (!(settings.duration_s > 0.0)) throw DomainError("duration must be > 0");
    if (settings.dt_s > settings.duration_s) throw DomainError("dt must not exceed duration");
    if (!(settings.initial_soc >= 0.0 && settings.initial_soc <= 1.0))
        throw DomainError("initial_soc must lie in [0, 1]");

    const auto steps = static_cast<long long>(std::floor(settings.duration_s / settings.dt_s + 1e-9));

    TimeSeries series;
    series.dt_s = settings.dt_s;
    if (settings.record_samples) series.samples.reserve(static_cast<std::size_t>(steps) + 1);

    Stepper stepper(config, profile, settings);
    bool stop_next = false;
    for (long long k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * settings.dt_s;
        stepper.command(t, k == 0);
        const bool last = k == steps || stop_next;
        if (settings.record_samples || last || k == 0) series.samples.push_back(stepper.state());
        if (last) break;
        stepper.advance(t);
        stop_next = settings.stop_after_full_charge && stepper.full_charge_seen();
    }

    series.events = stepper.take_events();
    std::stable_sort(series.events.begin(), series.events.end(),
                     [](const Event& a, const Event& b) { return a.t_s < b.t_s; });
    return series;
}

std::optional<double> charge_time(const TimeSeries& series) {
    if (!series.samples.empty() && series.samples.front().relay.phase != Phase::charging)
        throw DomainError("charge_time needs a trajectory that starts charging");
    for (const Event& e : series.events)
        if (e.kind == EventKind::full_charge_reached) return e.t_s / 3600.0;
    return std::nullopt;
}

std::vector<double> cycle_events(const TimeSeries& series) {
    std::vector<double> toggles;
    for (const Event& e : series.events)
        if (e.kind == EventKind::relay_toggle) toggles.push_back(e.t_s / 3600.0);
    return toggles;
}

}  // namespace packsim
