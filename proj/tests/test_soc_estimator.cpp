#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "packsim/errors.hpp"
#include "packsim/soc_estimator.hpp"

using namespace packsim;

TEST_CASE("coulomb step examples") {
    SocState s = coulomb_step({0.0}, 15.0, 3600.0, 210.15, 1.0);
    CHECK(s.soc == doctest::Approx(0.0713775874).epsilon(1e-9));
    CHECK_FALSE(s.saturated_high);

    s = coulomb_step({0.5}, 0.0, 123.0, 210.15, 1.0);
    CHECK(s.soc == 0.5);

    s = coulomb_step({0.99}, 15.0, 3600.0, 210.15, 1.0);
    CHECK(s.soc == 1.0);
    CHECK(s.saturated_high);

    s = coulomb_step({0.01}, -15.0, 3600.0, 210.15, 1.0);
    CHECK(s.soc == 0.0);
    CHECK(s.saturated_low);

    // The flag describes only the latest step.
    s = coulomb_step(s, 1.0, 1.0, 210.15, 1.0);
    CHECK_FALSE(s.saturated_low);
}

TEST_CASE("charge acceptance applies only while charging") {
    const double up = coulomb_step({0.5}, 10.0, 3600.0, 100.0, 0.8).soc - 0.5;
    const double down = 0.5 - coulomb_step({0.5}, -10.0, 3600.0, 100.0, 0.8).soc;
    CHECK(up == doctest::Approx(0.08));
    CHECK(down == doctest::Approx(0.10));
}

TEST_CASE("coulomb step rejects bad arguments") {
    CHECK_THROWS_AS(coulomb_step({0.5}, 1.0, 0.0, 10.0, 1.0), DomainError);
    CHECK_THROWS_AS(coulomb_step({0.5}, 1.0, 1.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(coulomb_step({0.5}, 1.0, 1.0, 10.0, 0.0), DomainError);
    CHECK_THROWS_AS(coulomb_step({0.5}, 1.0, 1.0, 10.0, 1.5), DomainError);
}

TEST_CASE("sub-stepping and monotonicity") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> amps(-20.0, 20.0);
    std::uniform_int_distribution<int> parts(2, 50);
    for (int i = 0; i < 200; ++i) {
        const double current = amps(rng);
        const int k = parts(rng);
        const SocState whole = coulomb_step({0.5}, current, 60.0 * k, 50.0, 0.9);
        SocState split{0.5};
        for (int j = 0; j < k; ++j) {
            const SocState next = coulomb_step(split, current, 60.0, 50.0, 0.9);
            if (current >= 0) CHECK(next.soc >= split.soc);
            if (current <= 0) CHECK(next.soc <= split.soc);
            split = next;
        }
        CHECK(split.soc == doctest::Approx(whole.soc).epsilon(1e-12));
        CHECK(split.soc == doctest::Approx(oracle::coulomb_integral(0.5, {{current, 60.0 * k}}, 50.0, 0.9))
                               .epsilon(1e-12));
    }
}
