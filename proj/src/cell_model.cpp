#include "packsim/cell_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "packsim/errors.hpp"

namespace packsim {

std::vector<OcvPoint> CellSpec::default_ocv_table() {
    return {{0.0, 3.00}, {0.1, 3.45}, {0.2, 3.55}, {0.4, 3.62},
            {0.6, 3.72}, {0.8, 3.90}, {0.9, 4.05}, {1.0, 4.20}};
}

void validate(const CellSpec& spec) {
    if (!(spec.capacity_ah > 0.0)) throw InvalidSpec("cell capacity must be > 0");
    if (!(spec.energy_wh > 0.0)) throw InvalidSpec("cell energy must be > 0");
    if (!(spec.mass_kg > 0.0)) throw InvalidSpec("cell mass must be > 0");
    if (!(spec.r_internal_ohm >= 0.0)) throw InvalidSpec("cell r_internal must be >= 0");

    const auto& table = spec.ocv_table;
    if (table.size() < 2) throw InvalidSpec("ocv_table needs at least two points");
    if (table.front().soc != 0.0 || table.back().soc != 1.0)
        throw InvalidSpec("ocv_table must span soc 0 to 1 exactly");
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (!(table[i].soc > table[i - 1].soc))
            throw InvalidSpec("ocv_table soc keys must be strictly increasing");
        if (table[i].volts < table[i - 1].volts)
            throw InvalidSpec("ocv_table voltages must be non-decreasing");
    }
    if (spec.v_min > table.front().volts)
        throw InvalidSpec("v_min must not exceed the OCV at soc 0");
    if (!(spec.v_cv > spec.v_min)) throw InvalidSpec("v_cv must be greater than v_min");
}

double nominal_voltage(const CellSpec& spec) {
    if (!(spec.capacity_ah > 0.0)) throw InvalidSpec("cell capacity must be > 0");
    return spec.energy_wh / spec.capacity_ah;
}

double ocv(const CellSpec& spec, double soc) {
    if (!(soc >= 0.0 && soc <= 1.0))
        throw DomainError("soc " + std::to_string(soc) + " outside [0, 1]");

    const auto& table = spec.ocv_table;
    // first knot with key >= soc
    auto hi = std::lower_bound(table.begin(), table.end(), soc,
                               [](const OcvPoint& p, double s) { return p.soc < s; });
    if (hi == table.end()) return table.back().volts;
    if (hi->soc == soc || hi == table.begin()) return hi->volts;
    auto lo = std::prev(hi);
    const double w = (soc - lo->soc) / (hi->soc - lo->soc);
    return lo->volts + w * (hi->volts - lo->volts);
}

double terminal_voltage(const CellSpec& spec, double soc, double i_cell) {
    return ocv(spec, soc) + i_cell * spec.r_internal_ohm;
}

}  // namespace packsim
