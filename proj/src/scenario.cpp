#include "packsim/scenario.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <sstream>

#include "packsim/errors.hpp"

namespace packsim {

namespace pt = boost::property_tree;

ProfilePreset parse_profile_preset(std::string_view text) {
    if (text == "default") return ProfilePreset::default_;
    if (text == "paper") return ProfilePreset::paper;
    throw InvalidSpec("unknown profile '" + std::string(text) + "' (expected paper or default)");
}

void apply_preset(ChargerProfile& profile, ProfilePreset preset) {
    const ChargerProfile base = preset == ProfilePreset::paper ? paper_profile(profile.i_charge)
                                                               : default_profile(profile.i_charge);
    profile.mode = base.mode;
    profile.eta_charge = base.eta_charge;
    profile.soc_high = base.soc_high;
    profile.soc_low = base.soc_low;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view text, const std::string& key) {
    text = trim(text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError(key, "expected a number, got '" + std::string(text) + "'");
    return value;
}

int to_int(std::string_view text, const std::string& key) {
    text = trim(text);
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError(key, "expected an integer, got '" + std::string(text) + "'");
    return value;
}

std::vector<OcvPoint> parse_ocv_table(std::string_view text, const std::string& key) {
    std::vector<OcvPoint> table;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = trim(text.substr(0, comma));
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        const auto colon = item.find(':');
        if (colon == std::string_view::npos)
            throw ConfigError(key, "expected soc:volts pairs, got '" + std::string(item) + "'");
        table.push_back({to_double(item.substr(0, colon), key), to_double(item.substr(colon + 1), key)});
    }
    return table;
}

template <class Fn>
void with_key_path(const std::string& key, Fn&& fn) {
    try {
        fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(key, e.what());
    }
}

void require_flat(const pt::ptree& section, const std::string& name) {
    for (const auto& [key, node] : section)
        if (!node.empty()) throw ConfigError(name + "." + key, "nested sections are not supported");
}

CellSpec parse_cell(const pt::ptree& section) {
    require_flat(section, "cell");
    CellSpec cell;
    for (const auto& [key, node] : section) {
        const std::string path = "cell." + key;
        const std::string& value = node.data();
        if (key == "radius") cell.radius_m = to_double(value, path);
        else if (key == "height") cell.height_m = to_double(value, path);
        else if (key == "mass") cell.mass_kg = to_double(value, path);
        else if (key == "capacity") cell.capacity_ah = to_double(value, path);
        else if (key == "energy") cell.energy_wh = to_double(value, path);
        else if (key == "r_internal") cell.r_internal_ohm = to_double(value, path);
        else if (key == "ocv_table") cell.ocv_table = parse_ocv_table(value, path);
        else if (key == "v_cv") cell.v_cv = to_double(value, path);
        else if (key == "v_min") cell.v_min = to_double(value, path);
        else throw ConfigError(path, "unknown key");
    }
    with_key_path("cell", [&] { validate(cell); });
    return cell;
}

AssemblyHierarchy parse_hierarchy(const pt::ptree& section) {
    require_flat(section, "pack");
    AssemblyHierarchy h;
    for (const auto& [key, node] : section) {
        const std::string path = "pack." + key;
        const std::string& value = node.data();
        if (key == "cells_in_parallel") h.cells_in_parallel = to_int(value, path);
        else if (key == "assemblies_in_series_per_module")
            h.assemblies_in_series_per_module = to_int(value, path);
        else if (key == "modules_in_series_per_assembly")
            h.modules_in_series_per_assembly = to_int(value, path);
        else if (key == "module_assemblies_in_series_per_pack")
            h.module_assemblies_in_series_per_pack = to_int(value, path);
        else throw ConfigError(path, "unknown key");
    }
    with_key_path("pack", [&] { validate(h); });
    return h;
}

ChargerProfile parse_charger(const pt::ptree& section) {
    require_flat(section, "charger");
    if (!section.get_child_optional("i_charge"))
        throw ConfigError("charger.i_charge", "required key is missing");

    ChargerProfile profile;
    if (auto preset = section.get_optional<std::string>("profile"))
        with_key_path("charger.profile", [&] { apply_preset(profile, parse_profile_preset(*preset)); });

    for (const auto& [key, node] : section) {
        const std::string path = "charger." + key;
        const std::string& value = node.data();
        if (key == "profile") continue;
        if (key == "i_charge") profile.i_charge = to_double(value, path);
        else if (key == "i_discharge") profile.i_discharge = to_double(value, path);
        else if (key == "mode")
            with_key_path(path, [&] { profile.mode = parse_charge_mode(trim(value)); });
        else if (key == "i_cutoff") profile.i_cutoff = to_double(value, path);
        else if (key == "soc_high") profile.soc_high = to_double(value, path);
        else if (key == "soc_low") profile.soc_low = to_double(value, path);
        else if (key == "eta_charge") profile.eta_charge = to_double(value, path);
        else throw ConfigError(path, "unknown key");
    }
    with_key_path("charger", [&] { validate(profile); });
    return profile;
}

void parse_sim(const pt::ptree& section, Scenario& scenario) {
    require_flat(section, "sim");
    for (const auto& [key, node] : section) {
        const std::string path = "sim." + key;
        const std::string& value = node.data();
        if (key == "duration_h") scenario.sim.duration_s = to_double(value, path) * 3600.0;
        else if (key == "dt") scenario.sim.dt_s = to_double(value, path);
        else if (key == "initial_soc") scenario.sim.initial_soc = to_double(value, path);
        else if (key == "sample_interval") scenario.sample_interval_s = to_double(value, path);
        else throw ConfigError(path, "unknown key");
    }
}

}  // namespace

void validate(const Scenario& s) {
    with_key_path("cell", [&] { validate(s.pack.cell); });
    with_key_path("pack", [&] { validate(s.pack.topology); });
    with_key_path("charger", [&] { validate(s.charger); });
    if (!(s.sim.duration_s > 0.0)) throw ConfigError("sim.duration_h", "must be > 0");
    if (!(s.sim.dt_s > 0.0)) throw ConfigError("sim.dt", "must be > 0");
    if (s.sim.dt_s > s.sim.duration_s) throw ConfigError("sim.dt", "must not exceed the duration");
    if (!(s.sim.initial_soc >= 0.0 && s.sim.initial_soc <= 1.0))
        throw ConfigError("sim.initial_soc", "must lie in [0, 1]");
    if (!(s.sample_interval_s > 0.0)) throw ConfigError("sim.sample_interval", "must be > 0");
}

Scenario parse_scenario(std::string_view text) {
    pt::ptree root;
    try {
        std::istringstream in{std::string(text)};
        pt::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("", "line " + std::to_string(e.line()) + ": " + e.message());
    }

    Scenario scenario;
    const pt::ptree* pack_section = nullptr;
    const pt::ptree* charger_section = nullptr;
    const pt::ptree* sim_section = nullptr;
    std::optional<std::string> pack_string;
    std::optional<std::string> reconfigure_to;

    for (const auto& [key, node] : root) {
        if (!node.empty()) {
            if (key == "cell") scenario.pack.cell = parse_cell(node);
            else if (key == "pack") pack_section = &node;
            else if (key == "charger") charger_section = &node;
            else if (key == "sim") sim_section = &node;
            else throw ConfigError(key, "unknown section");
        } else if (key == "name") {
            scenario.name = trim(node.data());
        } else if (key == "pack") {
            pack_string = trim(node.data());
        } else if (key == "reconfigure_to") {
            reconfigure_to = trim(node.data());
        } else if (key == "cell" || key == "sim") {
            // empty section, defaults apply
        } else if (key == "charger") {
            throw ConfigError("charger.i_charge", "required key is missing");
        } else {
            throw ConfigError(key, "unknown key");
        }
    }

    if (pack_string) {
        with_key_path("pack", [&] { scenario.pack.topology = parse_topology(*pack_string); });
    } else if (pack_section) {
        scenario.pack.topology = flatten(parse_hierarchy(*pack_section), scenario.pack.cell).topology;
    } else {
        throw ConfigError("pack", "required section is missing");
    }

    if (!charger_section) throw ConfigError("charger", "required section is missing");
    scenario.charger = parse_charger(*charger_section);
    if (sim_section) parse_sim(*sim_section, scenario);

    if (reconfigure_to) {
        Topology target;
        with_key_path("reconfigure_to", [&] { target = parse_topology(*reconfigure_to); });
        reconfigure_scenario(scenario, target);
    }
    if (scenario.name.empty()) scenario.name = to_string(scenario.pack.topology);

    validate(scenario);
    return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open scenario file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str());
}

Scenario baseline_scenario() {
    Scenario scenario;
    scenario.pack.topology = {92, 9};
    scenario.charger = default_profile(15.0);
    scenario.name = to_string(scenario.pack.topology);
    return scenario;
}

void reconfigure_scenario(Scenario& scenario, const Topology& topology) {
    const bool renamed = scenario.name.empty() || scenario.name == to_string(scenario.pack.topology);
    Reconfigured next = reconfigure(scenario.pack, topology.s, topology.p);
    scenario.pack = std::move(next.config);
    if (next.warning) scenario.warnings.push_back(std::move(*next.warning));
    if (renamed) scenario.name = to_string(topology);
}

}  // namespace packsim
