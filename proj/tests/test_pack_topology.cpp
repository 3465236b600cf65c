#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "packsim/errors.hpp"
#include "packsim/pack_topology.hpp"

using namespace packsim;

TEST_CASE("flatten multiplies the series levels") {
    const CellSpec cell;
    CHECK(flatten({9, 23, 4, 1}, cell).topology == Topology{92, 9});
    CHECK(flatten({1, 1, 1, 1}, cell).topology == Topology{1, 1});
    CHECK(flatten({4, 2, 1, 1}, cell).topology == Topology{2, 4});
    CHECK_THROWS_AS(flatten({0, 1, 1, 1}, cell), InvalidSpec);

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> count(1, 12);
    for (int i = 0; i < 200; ++i) {
        AssemblyHierarchy h{count(rng), count(rng), count(rng), count(rng)};
        const PackConfig c = flatten(h, cell);
        CHECK(c.total_cells() == static_cast<long long>(h.cells_in_parallel) *
                                     h.assemblies_in_series_per_module *
                                     h.modules_in_series_per_assembly *
                                     h.module_assemblies_in_series_per_pack);
    }
}

TEST_CASE("pack capacity and nominal voltage") {
    const CellSpec cell;
    CHECK(pack_capacity({{92, 9}, cell}) == doctest::Approx(210.15));
    CHECK(pack_capacity({{142, 5}, cell}) == doctest::Approx(116.75));
    CHECK(pack_capacity({{1, 1}, cell}) == doctest::Approx(23.35));

    CHECK(pack_nominal_voltage({{92, 9}, cell}) == doctest::Approx(340.8137045).epsilon(1e-9));
    CHECK(pack_nominal_voltage({{142, 5}, cell}) == doctest::Approx(526.0385439).epsilon(1e-9));
    CHECK(pack_nominal_voltage({{1, 1}, cell}) == doctest::Approx(3.7044968).epsilon(1e-7));

    for (int s = 1; s < 200; s += 7)
        for (int p = 1; p < 40; p += 3) {
            const PackConfig c{{s, p}, cell};
            CHECK(pack_capacity(c) * pack_nominal_voltage(c) ==
                  doctest::Approx(c.total_cells() * cell.energy_wh).epsilon(1e-4));
        }
}

TEST_CASE("reconfigure warns iff the cell count changes") {
    const PackConfig base{{92, 9}, CellSpec{}};
    CHECK_FALSE(reconfigure(base, 46, 18).warning);
    CHECK_FALSE(reconfigure(base, 92, 9).warning);

    const auto r = reconfigure(base, 142, 5);
    REQUIRE(r.warning);
    CHECK(r.warning->find("cell count 828 → 710") == 0);
    CHECK(r.config.topology == Topology{142, 5});
    CHECK(r.config.cell.capacity_ah == base.cell.capacity_ah);

    CHECK_THROWS_AS(reconfigure(base, 0, 5), InvalidSpec);

    std::mt19937 rng(11);
    std::uniform_int_distribution<int> count(1, 40);
    for (int i = 0; i < 300; ++i) {
        const int s = count(rng), p = count(rng);
        const auto out = reconfigure(base, s, p);
        CHECK(out.warning.has_value() == (static_cast<long long>(s) * p != 828));
    }
}

TEST_CASE("factorizations") {
    const std::vector<Topology> eight = enumerate_factorizations(8);
    CHECK(eight == std::vector<Topology>{{1, 8}, {2, 4}, {4, 2}, {8, 1}});
    CHECK(enumerate_factorizations(1) == std::vector<Topology>{{1, 1}});
    CHECK_THROWS_AS(enumerate_factorizations(0), DomainError);

    const auto pairs = enumerate_factorizations(828);
    CHECK(pairs.size() == 18);
    CHECK(std::find(pairs.begin(), pairs.end(), Topology{46, 18}) != pairs.end());
    CHECK(std::find(pairs.begin(), pairs.end(), Topology{92, 9}) != pairs.end());

    for (long long n : {2LL, 36LL, 97LL, 360LL, 1024LL, 9973LL}) {
        const auto expected = oracle::divisor_pairs(n);
        const auto got = enumerate_factorizations(n);
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].s == expected[i].first);
            CHECK(got[i].p == expected[i].second);
        }
    }
}

TEST_CASE("NSMP parsing") {
    CHECK(parse_topology("92S9P") == Topology{92, 9});
    CHECK(parse_topology("1S1P") == Topology{1, 1});
    CHECK(to_string(Topology{46, 18}) == "46S18P");

    CHECK_THROWS_WITH_AS(parse_topology("0S5P"), "s must be ≥ 1", InvalidSpec);
    CHECK_THROWS_WITH_AS(parse_topology("5S0P"), "p must be ≥ 1", InvalidSpec);
    for (const char* bad : {"", "92s9p", "92S9", "S9P", "92SP", "92S9P ", "9 2S9P", "92S9PX",
                            "92X9P", "+92S9P", "1.5S2P"})
        CHECK_THROWS_AS(parse_topology(bad), InvalidSpec);
}
