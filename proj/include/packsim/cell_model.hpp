#pragma once

#include <vector>

namespace packsim {

struct OcvPoint {
    double soc;    // fraction in [0, 1]
    double volts;
};

/// Parameters of a single cylindrical lithium-ion cell.
///
/// Geometry and mass are carried for reporting only; the electrical model is an
/// open-circuit voltage source (piecewise-linear in SOC) behind a series resistance.
struct CellSpec {
    double radius_m = 0.023;
    double height_m = 0.08;
    double mass_kg = 0.355;
    double capacity_ah = 23.35;
    double energy_wh = 86.5;
    double r_internal_ohm = 0.02;
    std::vector<OcvPoint> ocv_table = default_ocv_table();
    double v_cv = 4.20;   // per-cell CV ceiling
    double v_min = 2.50;  // per-cell discharge floor

    /// Generic NMC-shaped curve used when a scenario supplies none.
    static std::vector<OcvPoint> default_ocv_table();
};

/// Throws InvalidSpec naming the first violated invariant.
void validate(const CellSpec& spec);

/// energy / capacity. Throws InvalidSpec for non-positive capacity.
double nominal_voltage(const CellSpec& spec);

/// Piecewise-linear interpolation over the OCV table; exact at the knots.
/// Throws DomainError when soc is outside [0, 1].
double ocv(const CellSpec& spec, double soc);

/// ocv(soc) + i_cell * r_internal, with i_cell positive while charging.
double terminal_voltage(const CellSpec& spec, double soc, double i_cell);

}  // namespace packsim
