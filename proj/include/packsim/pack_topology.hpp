#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "packsim/cell_model.hpp"

namespace packsim {

/// Four-level build description: cells in parallel form an assembly, assemblies in
/// series form a module, modules in series form a module assembly, and module
/// assemblies in series form the pack.
struct AssemblyHierarchy {
    int cells_in_parallel = 1;
    int assemblies_in_series_per_module = 1;
    int modules_in_series_per_assembly = 1;
    int module_assemblies_in_series_per_pack = 1;
};

// Electrical S x P topology. Strings-of-S-in-parallel and parallel-assemblies-in-series
// are equivalent for identical cells, so only (s, p) is stored.
struct Topology {
    int s = 1;
    int p = 1;

    long long total_cells() const { return static_cast<long long>(s) * p; }
    friend bool operator==(const Topology&, const Topology&) = default;
};

struct PackConfig {
    Topology topology;
    CellSpec cell;

    int s() const { return topology.s; }
    int p() const { return topology.p; }
    long long total_cells() const { return topology.total_cells(); }
};

struct Reconfigured {
    PackConfig config;
    std::optional<std::string> warning;  // set iff the cell count changed
};

void validate(const AssemblyHierarchy& h);
void validate(const Topology& t);

PackConfig flatten(const AssemblyHierarchy& h, const CellSpec& cell);

double pack_capacity(const PackConfig& c);         // ampere-hours
double pack_nominal_voltage(const PackConfig& c);  // volts

Reconfigured reconfigure(const PackConfig& c, int new_s, int new_p);

/// Every (s, p) with s * p == n_cells, ascending in s. Throws DomainError for n_cells < 1.
std::vector<Topology> enumerate_factorizations(long long n_cells);

/// Parses the "<int>S<int>P" form, e.g. "92S9P". Throws InvalidSpec on bad input,
/// including zero counts ("s must be ≥ 1").
Topology parse_topology(std::string_view text);
std::string to_string(const Topology& t);

}  // namespace packsim
