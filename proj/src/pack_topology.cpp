#include "packsim/pack_topology.hpp"

#include <charconv>
#include <limits>

#include "packsim/errors.hpp"

namespace packsim {

void validate(const AssemblyHierarchy& h) {
    if (h.cells_in_parallel < 1) throw InvalidSpec("cells_in_parallel must be ≥ 1");
    if (h.assemblies_in_series_per_module < 1)
        throw InvalidSpec("assemblies_in_series_per_module must be ≥ 1");
    if (h.modules_in_series_per_assembly < 1)
        throw InvalidSpec("modules_in_series_per_assembly must be ≥ 1");
    if (h.module_assemblies_in_series_per_pack < 1)
        throw InvalidSpec("module_assemblies_in_series_per_pack must be ≥ 1");
}

void validate(const Topology& t) {
    if (t.s < 1) throw InvalidSpec("s must be ≥ 1");
    if (t.p < 1) throw InvalidSpec("p must be ≥ 1");
}

PackConfig flatten(const AssemblyHierarchy& h, const CellSpec& cell) {
    validate(h);
    const long long s = static_cast<long long>(h.assemblies_in_series_per_module) *
                        h.modules_in_series_per_assembly *
                        h.module_assemblies_in_series_per_pack;
    if (s > std::numeric_limits<int>::max()) throw InvalidSpec("series count overflows");
    return PackConfig{Topology{static_cast<int>(s), h.cells_in_parallel}, cell};
}

double pack_capacity(const PackConfig& c) { return c.p() * c.cell.capacity_ah; }

double pack_nominal_voltage(const PackConfig& c) { return c.s() * nominal_voltage(c.cell); }

Reconfigured reconfigure(const PackConfig& c, int new_s, int new_p) {
    Topology next{new_s, new_p};
    validate(next);
    Reconfigured out{PackConfig{next, c.cell}, std::nullopt};
    if (next.total_cells() != c.total_cells()) {
        out.warning = "cell count " + std::to_string(c.total_cells()) + " → " +
                      std::to_string(next.total_cells()) + " (" + to_string(c.topology) +
                      " reconfigured to " + to_string(next) + ")";
    }
    return out;
}

std::vector<Topology> enumerate_factorizations(long long n_cells) {
    if (n_cells < 1) throw DomainError("n_cells must be ≥ 1");
    if (n_cells > std::numeric_limits<int>::max()) throw DomainError("n_cells too large");

    std::vector<Topology> low;   // divisors up to sqrt(n)
    std::vector<Topology> high;  // their cofactors, collected in descending order
    for (long long d = 1; d * d <= n_cells; ++d) {
        if (n_cells % d != 0) continue;
        const long long q = n_cells / d;
        low.push_back({static_cast<int>(d), static_cast<int>(q)});
        if (q != d) high.push_back({static_cast<int>(q), static_cast<int>(d)});
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
}

namespace {

int parse_count(std::string_view digits, std::string_view whole) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
        throw InvalidSpec("malformed pack configuration '" + std::string(whole) +
                          "' (expected e.g. 92S9P)");
    return value;
}

}  // namespace

Topology parse_topology(std::string_view text) {
    const auto s_pos = text.find('S');
    if (s_pos == std::string_view::npos || text.empty() || text.back() != 'P')
        throw InvalidSpec("malformed pack configuration '" + std::string(text) +
                          "' (expected e.g. 92S9P)");
    Topology t{parse_count(text.substr(0, s_pos), text),
               parse_count(text.substr(s_pos + 1, text.size() - s_pos - 2), text)};
    validate(t);
    return t;
}

std::string to_string(const Topology& t) {
    return std::to_string(t.s) + "S" + std::to_string(t.p) + "P";
}

}  // namespace packsim
