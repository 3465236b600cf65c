#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "packsim/errors.hpp"
#include "packsim/sim_engine.hpp"

using namespace packsim;

namespace {

SimSettings hours(double h, double dt = 1.0) {
    SimSettings s;
    s.duration_s = h * 3600.0;
    s.dt_s = dt;
    return s;
}

ChargerProfile cc_only(double amps, double eta = 1.0) {
    ChargerProfile p = default_profile(amps);
    p.mode = ChargeMode::cc_only;
    p.eta_charge = eta;
    return p;
}

std::size_t count_events(const TimeSeries& ts, EventKind kind) {
    std::size_t n = 0;
    for (const Event& e : ts.events) n += e.kind == kind;
    return n;
}

}  // namespace

TEST_CASE("paper profile charge times") {
    const CellSpec cell;
    const auto t92 = charge_time(simulate({{92, 9}, cell}, paper_profile(15.0), hours(48)));
    const auto t46 = charge_time(simulate({{46, 18}, cell}, paper_profile(15.0), hours(48)));
    const auto t142 = charge_time(simulate({{142, 5}, cell}, paper_profile(15.0), hours(48)));
    REQUIRE(t92);
    REQUIRE(t46);
    REQUIRE(t142);
    CHECK(*t92 == doctest::Approx(16.2).epsilon(0.005));
    CHECK(*t46 == doctest::Approx(32.4).epsilon(0.005));
    CHECK(*t142 == doctest::Approx(9.0).epsilon(0.005));
}

TEST_CASE("ideal constant current charge matches the closed form") {
    const auto t = charge_time(simulate({{92, 9}, CellSpec{}}, cc_only(15.0), hours(20)));
    REQUIRE(t);
    CHECK(*t == doctest::Approx(14.01).epsilon(1e-9));

    const auto short_run = charge_time(simulate({{92, 9}, CellSpec{}}, cc_only(15.0), hours(10)));
    CHECK_FALSE(short_run);
}

TEST_CASE("zero current keeps SOC constant") {
    ChargerProfile idle = cc_only(0.0);
    idle.i_discharge = 0.0;
    SimSettings s = hours(5);
    s.initial_soc = 0.4;
    const TimeSeries ts = simulate({{92, 9}, CellSpec{}}, idle, s);
    for (const SimState& st : ts.samples) {
        CHECK(st.soc.soc == 0.4);
        CHECK(st.control_region == ControlRegion::idle);
    }
    CHECK(cycle_events(ts).empty());
    CHECK_FALSE(charge_time(ts));
}

TEST_CASE("sample grid and recorded voltage") {
    const PackConfig pack{{46, 18}, CellSpec{}};
    const TimeSeries ts = simulate(pack, default_profile(15.0), hours(2, 2.5));
    CHECK(ts.samples.size() == 2881);
    for (std::size_t k = 0; k < ts.samples.size(); ++k) {
        const SimState& st = ts.samples[k];
        CHECK(st.t_s == static_cast<double>(k) * 2.5);
        CHECK(st.v_pack == 46 * terminal_voltage(pack.cell, st.soc.soc, st.i_pack / 18));
    }
}

TEST_CASE("cycle events follow alternating closed-form phases") {
    const TimeSeries ts = simulate({{142, 5}, CellSpec{}}, paper_profile(15.0), hours(48));
    const std::vector<double> toggles = cycle_events(ts);
    const double charge = oracle::constant_current_charge_hours(5, 23.35, 15.0, kPaperEtaCharge);
    const double discharge = oracle::constant_current_charge_hours(5, 23.35, 15.0, 1.0);
    const std::vector<double> expected{charge, charge + discharge, 2 * charge + discharge,
                                       2 * charge + 2 * discharge, 3 * charge + 2 * discharge};
    REQUIRE(toggles.size() == expected.size());
    for (std::size_t i = 0; i < toggles.size(); ++i) CHECK(std::abs(toggles[i] - expected[i]) < 0.02);

    CHECK(count_events(ts, EventKind::full_charge_reached) == 3);

    const TimeSeries brief = simulate({{142, 5}, CellSpec{}}, paper_profile(15.0), hours(8));
    CHECK(cycle_events(brief).empty());
}

TEST_CASE("charge between toggles matches capacity over acceptance") {
    const PackConfig pack{{92, 9}, CellSpec{}};
    const ChargerProfile profile = paper_profile(15.0);
    const TimeSeries ts = simulate(pack, profile, hours(48));
    std::vector<double> at_toggle{0.0};
    for (const Event& e : ts.events)
        if (e.kind == EventKind::relay_toggle) {
            const auto k = static_cast<std::size_t>(std::llround(e.t_s / ts.dt_s));
            at_toggle.push_back(ts.samples[k].cumulative_ah);
        }
    REQUIRE(at_toggle.size() >= 3);
    for (std::size_t i = 1; i < at_toggle.size(); ++i) {
        const double moved = std::abs(at_toggle[i] - at_toggle[i - 1]);
        const double expected = i % 2 == 1 ? pack_capacity(pack) / profile.eta_charge : pack_capacity(pack);
        CHECK(std::abs(moved - expected) / expected < 1e-3);
    }
}

TEST_CASE("constant current charge time depends on p only") {
    const CellSpec cell;
    const ChargerProfile profile = cc_only(15.0, 0.9);
    const TimeSeries a = simulate({{10, 9}, cell}, profile, hours(20));
    const TimeSeries b = simulate({{200, 9}, cell}, profile, hours(20));
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t k = 0; k < a.samples.size(); ++k) CHECK(a.samples[k].soc.soc == b.samples[k].soc.soc);
    CHECK(*charge_time(a) == *charge_time(b));

    const double t9 = *charge_time(a);
    const double t18 = *charge_time(simulate({{46, 18}, cell}, profile, hours(40)));
    CHECK(std::abs(t18 / t9 - 2.0) / 2.0 < 1e-6);

    const double t9_30 = *charge_time(simulate({{10, 9}, cell}, cc_only(30.0, 0.9), hours(20)));
    CHECK(std::abs(t9_30 / t9 - 0.5) / 0.5 < 1e-6);
}

TEST_CASE("cc-cv charging") {
    const CellSpec cell;
    const PackConfig pack{{92, 9}, cell};
    const ChargerProfile profile = default_profile(15.0);
    const TimeSeries ts = simulate(pack, profile, hours(20));

    CHECK(count_events(ts, EventKind::cc_to_cv) == 1);
    const auto t_cv = charge_time(ts);
    REQUIRE(t_cv);
    const auto t_cc = charge_time(simulate(pack, cc_only(15.0), hours(20)));
    CHECK(*t_cv >= *t_cc);

    double last_cv_current = 1e9;
    for (const SimState& st : ts.samples) {
        CHECK(st.v_pack <= pack.s() * cell.v_cv + 1e-6);
        if (st.relay.phase == Phase::charging) {
            CHECK(st.i_pack >= 0.0);
            CHECK(st.i_pack <= 15.0);
        }
        if (st.control_region == ControlRegion::cv) {
            CHECK(st.i_pack <= last_cv_current);
            last_cv_current = st.i_pack;
        }
        if (st.t_s / 3600.0 > *t_cv) break;
    }

    // The CV entry lies where the terminal voltage at 15 A reaches the ceiling.
    for (const Event& e : ts.events) {
        if (e.kind != EventKind::cc_to_cv) continue;
        const double soc_at_entry = 0.9 + (4.2 - 15.0 / 9 * 0.02 - 4.05) / 1.5;
        CHECK(e.t_s / 3600.0 == doctest::Approx(soc_at_entry * 210.15 / 15.0).epsilon(1e-5));
    }

    const double t18 = *charge_time(simulate({{46, 18}, cell}, profile, hours(40)));
    CHECK(std::abs(t18 / *t_cv - 2.0) / 2.0 < 0.05);

    const double half_dt = *charge_time(simulate(pack, profile, hours(20, 0.5)));
    CHECK(std::abs(half_dt - *t_cv) / *t_cv < 1e-4);
}

TEST_CASE("discharge voltage floor forces a recharge") {
    CellSpec weak;
    weak.capacity_ah = 2.0;
    weak.energy_wh = 7.4;
    weak.r_internal_ohm = 0.2;
    ChargerProfile profile = cc_only(5.0);
    SimSettings s = hours(3);
    s.initial_soc = 0.5;
    s.dt_s = 1.0;

    ChargerProfile start_discharging = profile;
    start_discharging.soc_high = 0.5;
    const TimeSeries ts = simulate({{1, 1}, weak}, start_discharging, s);
    REQUIRE(count_events(ts, EventKind::voltage_floor_hit) >= 1);
    for (const SimState& st : ts.samples)
        if (st.relay.phase == Phase::discharging)
            CHECK(terminal_voltage(weak, st.soc.soc, st.i_pack) >= weak.v_min);
    double min_soc = 1.0;
    for (const SimState& st : ts.samples) min_soc = std::min(min_soc, st.soc.soc);
    CHECK(min_soc > 0.1);
}

TEST_CASE("simulate validates its inputs") {
    const PackConfig pack{{92, 9}, CellSpec{}};
    SimSettings s = hours(1);
    s.dt_s = 0.0;
    CHECK_THROWS_AS(simulate(pack, paper_profile(15), s), DomainError);
    s = hours(1);
    s.dt_s = 7200.0;
    CHECK_THROWS_AS(simulate(pack, paper_profile(15), s), DomainError);
    s = hours(1);
    s.initial_soc = 1.5;
    CHECK_THROWS_AS(simulate(pack, paper_profile(15), s), DomainError);
    CHECK_THROWS_AS(simulate({{0, 9}, CellSpec{}}, paper_profile(15), hours(1)), InvalidSpec);
}

TEST_CASE("runs are deterministic") {
    const PackConfig pack{{92, 9}, CellSpec{}};
    const TimeSeries a = simulate(pack, default_profile(30.0), hours(24));
    const TimeSeries b = simulate(pack, default_profile(30.0), hours(24));
    REQUIRE(a.samples.size() == b.samples.size());
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t k = 0; k < a.samples.size(); ++k) {
        CHECK(a.samples[k].soc.soc == b.samples[k].soc.soc);
        CHECK(a.samples[k].v_pack == b.samples[k].v_pack);
    }
    for (std::size_t i = 1; i < a.events.size(); ++i) CHECK(a.events[i - 1].t_s <= a.events[i].t_s);
}
