#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "cacsim/errors.hpp"
#include "cacsim/outage.hpp"
#include "cacsim/qfunc.hpp"
#include "cacsim/rng.hpp"

#include "oracles.hpp"

using namespace cacsim;

namespace {

SystemConfig interference_limited(double G, double f1 = 0.0, double f2 = 0.0) {
    SystemConfig cfg;
    cfg.processing_gain_G = G;
    cfg.f1 = f1;
    cfg.f2 = f2;
    cfg.noise_density_N0 = 0.0;
    cfg.total_power_Yb = 1.0;
    return cfg;
}

TrafficClass make_class(int index, double x, double alpha = 1.0, int codes = 1,
                        double outage_target = 0.01) {
    TrafficClass c;
    c.index = index;
    c.target_x = x;
    c.target_ber = 1e-4; // informational here; target_x drives the math
    c.activity_alpha = alpha;
    c.code_count_C = codes;
    c.outage_target = outage_target;
    return c;
}

PowerAllocation unit_alloc(std::size_t n) {
    return PowerAllocation{std::vector<double>(n, 1.0), 0};
}

} // namespace

TEST_CASE("single_class_capacity") {
    SystemConfig cfg = interference_limited(256.0);
    CHECK(single_class_capacity(cfg, 1e12) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(single_class_capacity(cfg, 6.915) == doctest::Approx(55.53145336).epsilon(1e-6));
    cfg.noise_density_N0 = 0.01; // Yb/N0 = 100
    CHECK(single_class_capacity(cfg, 6.915) == doctest::Approx(51.69145336).epsilon(1e-6));
    cfg.noise_density_N0 = 1.0; // 1/x < N0/Yb clamps at zero
    CHECK(single_class_capacity(cfg, 6.915) == 0.0);
    CHECK_THROWS_AS(single_class_capacity(cfg, 0.0), std::domain_error);
    CHECK_THROWS_AS(single_class_capacity(cfg, -1.0), std::domain_error);
}

TEST_CASE("ber_to_x against the bisection oracle") {
    CHECK(ber_to_x(0.5) == 0.0);
    for (double ber : {1e-4, 1e-6}) {
        const double q = oracles::q_inverse_reference(ber);
        CHECK(ber_to_x(ber) == doctest::Approx(0.5 * q * q).epsilon(1e-8));
    }
    CHECK(ber_to_x(1e-4) == doctest::Approx(6.915).epsilon(2e-3));
    CHECK(ber_to_x(1e-6) == doctest::Approx(11.30).epsilon(2e-3));
    CHECK_THROWS_AS(ber_to_x(0.0), std::domain_error);
    CHECK_THROWS_AS(ber_to_x(0.6), std::domain_error);
}

TEST_CASE("active_count_moments") {
    CHECK(active_count_moments(10, 1.0) == std::pair{10.0, 0.0});
    CHECK(active_count_moments(0, 0.4) == std::pair{0.0, 0.0});
    const auto [m, v] = active_count_moments(20, 0.4);
    CHECK(m == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(v == doctest::Approx(4.8).epsilon(1e-12));
}

TEST_CASE("active_count_moments match empirical binomial moments") {
    Rng rng(7);
    const std::size_t draws = 1000000;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
        const double k = static_cast<double>(rng.binomial(20, 0.4));
        sum += k;
        sum_sq += k * k;
    }
    const double mean = sum / draws;
    const double var = sum_sq / draws - mean * mean;
    const auto [m, v] = active_count_moments(20, 0.4);
    CHECK(mean == doctest::Approx(m).epsilon(0.01));
    CHECK(var == doctest::Approx(v).epsilon(0.01));
}

TEST_CASE("trsp_moments hand-evaluated cases") {
    SUBCASE("empty cell") {
        SystemConfig cfg = interference_limited(256.0, 0.114, 0.44);
        std::vector<TrafficClass> classes{make_class(0, 6.915)};
        const auto m = trsp_moments(CellState::empty(1), classes, unit_alloc(1), cfg);
        CHECK(m.mean == 0.0);
        CHECK(m.variance == 0.0);
    }
    SUBCASE("single class with the preset interference coefficients") {
        SystemConfig cfg = interference_limited(256.0, 0.114, 0.44);
        std::vector<TrafficClass> classes{make_class(0, 6.915)};
        CellState state{std::vector<std::uint32_t>{10}};
        const auto m = trsp_moments(state, classes, unit_alloc(1), cfg);
        CHECK(m.mean == doctest::Approx(11.14).epsilon(1e-12));
        CHECK(m.variance == doctest::Approx(4.4).epsilon(1e-12));
    }
    SUBCASE("two classes, unequal powers") {
        SystemConfig cfg = interference_limited(256.0, 0.0, 0.44);
        std::vector<TrafficClass> classes{make_class(0, 6.915), make_class(1, 6.915)};
        PowerAllocation alloc{{1.0, 2.0}, 0};
        CellState state{std::vector<std::uint32_t>{3, 1}};
        const auto m = trsp_moments(state, classes, alloc, cfg);
        CHECK(m.mean == doctest::Approx(5.0).epsilon(1e-12));
        CHECK(m.variance == doctest::Approx(0.44 * (1.0 * 3 + 4.0 * 1)).epsilon(1e-12));
    }
    SUBCASE("dimension mismatch") {
        SystemConfig cfg = interference_limited(256.0);
        std::vector<TrafficClass> classes{make_class(0, 6.915)};
        CHECK_THROWS_AS(trsp_moments(CellState::empty(2), classes, unit_alloc(1), cfg),
                        config_error);
    }
}

TEST_CASE("class_thresholds") {
    SystemConfig cfg = interference_limited(256.0);
    SUBCASE("reduces bitwise to single_class_capacity") {
        std::vector<TrafficClass> classes{make_class(0, 6.915)};
        const auto th = class_thresholds(classes, cfg);
        CHECK(th.eta[0] == single_class_capacity(cfg, 6.915));
        CHECK(th.feasible[0]);
    }
    SUBCASE("aggregate code target") {
        std::vector<TrafficClass> classes{make_class(0, 6.915, 1.0, 2)};
        const auto th = class_thresholds(classes, cfg);
        CHECK(th.eta[0] == doctest::Approx(27.76572668).epsilon(1e-8));
    }
    SUBCASE("infeasible class is flagged, not silently zero") {
        SystemConfig noisy = cfg;
        noisy.noise_density_N0 = 1.0; // 1/x below N0/Yb
        std::vector<TrafficClass> classes{make_class(0, 6.915)};
        const auto th = class_thresholds(classes, noisy);
        CHECK(th.eta[0] == 0.0);
        CHECK_FALSE(th.feasible[0]);
        CHECK_FALSE(th.all_feasible());
    }
    SUBCASE("power weighting") {
        std::vector<TrafficClass> classes{make_class(0, 6.915), make_class(1, 6.915)};
        PowerAllocation alloc{{1.0, 0.5}, 0};
        const auto th = class_thresholds(classes, alloc, cfg);
        CHECK(th.eta[0] == single_class_capacity(cfg, 6.915));
        CHECK(th.eta[1] == doctest::Approx(0.5 * single_class_capacity(cfg, 6.915)));
    }
}

TEST_CASE("outage_gaussian") {
    SUBCASE("empty cell has zero outage") {
        SystemConfig cfg = interference_limited(256.0, 0.114, 0.44);
        std::vector<TrafficClass> classes{make_class(0, 6.915), make_class(1, 11.30)};
        PowerAllocation alloc = allocate_powers(classes, cfg, 0);
        const auto est = outage_gaussian(CellState::empty(2), classes, alloc, cfg);
        CHECK(est.p_out[0] == 0.0);
        CHECK(est.p_out[1] == 0.0);
        CHECK(est.method == OutageMethod::gaussian);
    }
    SUBCASE("mean exactly at threshold gives one half") {
        // G = 80, X = 6 puts the threshold at exactly 20; f1 = 0 keeps the
        // mean at N.
        SystemConfig cfg = interference_limited(80.0, 0.0, 0.44);
        std::vector<TrafficClass> classes{make_class(0, 6.0)};
        CellState state{std::vector<std::uint32_t>{20}};
        const auto est = outage_gaussian(state, classes, unit_alloc(1), cfg);
        CHECK(est.p_out[0] == 0.5);
    }
    SUBCASE("single class at N = 40 under the preset coefficients") {
        SystemConfig cfg = interference_limited(256.0, 0.114, 0.44);
        std::vector<TrafficClass> classes{make_class(0, 6.915)};
        CellState state{std::vector<std::uint32_t>{40}};
        const auto est = outage_gaussian(state, classes, unit_alloc(1), cfg);
        CHECK(est.p_out[0] == doctest::Approx(0.0045).epsilon(0.12));
        // chain the arithmetic through the reference Q
        const double eta = 384.0 / 6.915;
        const double arg = (eta - 44.56) / std::sqrt(17.6);
        CHECK(est.p_out[0] == doctest::Approx(oracles::q_reference(arg)).epsilon(1e-9));
    }
    SUBCASE("zero variance becomes a step at the threshold") {
        SystemConfig cfg = interference_limited(80.0, 0.0, 0.0);
        std::vector<TrafficClass> classes{make_class(0, 6.0)};
        CellState below{std::vector<std::uint32_t>{19}};
        CellState above{std::vector<std::uint32_t>{21}};
        CHECK(outage_gaussian(below, classes, unit_alloc(1), cfg).p_out[0] == 0.0);
        CHECK(outage_gaussian(above, classes, unit_alloc(1), cfg).p_out[0] == 1.0);
    }
}

TEST_CASE("gaussian outage is monotone in every class count") {
    Rng rng(2024);
    int tested = 0;
    while (tested < 60) {
        const std::size_t L = 1 + rng.below(3);
        SystemConfig cfg = interference_limited(256.0, rng.uniform(0.0, 0.3),
                                                rng.uniform(0.0, 1.0));
        std::vector<TrafficClass> classes;
        for (std::size_t i = 0; i < L; ++i) {
            classes.push_back(make_class(static_cast<int>(i), rng.uniform(2.0, 15.0),
                                         rng.uniform(0.1, 1.0), 1 + rng.below(2)));
        }
        PowerAllocation alloc;
        try {
            alloc = allocate_powers(classes, cfg, 0);
        } catch (const infeasibility_error&) {
            continue;
        }
        CellState state = CellState::empty(L);
        for (std::size_t i = 0; i < L; ++i) state.own_counts[i] = rng.below(30);

        // Keep the scenario in the operating regime (mean below every
        // threshold); outside it the Gaussian tail saturates at 1 anyway.
        const auto th = class_thresholds(classes, alloc, cfg);
        const auto m = trsp_moments(state, classes, alloc, cfg);
        double min_eta = th.eta[0];
        for (double e : th.eta) min_eta = std::min(min_eta, e);
        if (!(m.mean <= min_eta)) continue;

        const auto base = outage_gaussian(state, classes, alloc, cfg);
        for (std::size_t k = 0; k < L; ++k) {
            CellState next = state;
            next.own_counts[k] += 1;
            const auto bumped = outage_gaussian(next, classes, alloc, cfg);
            for (std::size_t j = 0; j < L; ++j) {
                CHECK(bumped.p_out[j] >= base.p_out[j]);
            }
        }
        ++tested;
    }
}

TEST_CASE("power_ratio") {
    SUBCASE("two-BER example value") {
        const auto i = make_class(0, 6.915);
        const auto j = make_class(1, 11.30);
        CHECK(power_ratio(i, j, 256.0) == doctest::Approx(0.5834327427).epsilon(1e-8));
        CHECK(power_ratio(i, j, 256.0) == doctest::Approx(0.5835).epsilon(2e-3));
    }
    SUBCASE("self ratio keeps the formula's sign asymmetry") {
        const auto c = make_class(0, 6.915, 1.0, 2);
        const double t = 2.0 * 6.915;
        CHECK(power_ratio(c, c, 256.0) ==
              doctest::Approx((768.0 - 2.0 * t) / (768.0 + 2.0 * t)).epsilon(1e-12));
    }
    SUBCASE("small Eb/I0 target drives the ratio toward zero") {
        const auto i = make_class(0, 1e-9);
        const auto j = make_class(1, 6.915);
        CHECK(power_ratio(i, j, 256.0) < 1e-9);
        CHECK(power_ratio(i, j, 256.0) > 0.0);
    }
    SUBCASE("violating class is named") {
        const auto i = make_class(0, 6.915);
        const auto j = make_class(7, 500.0); // 2*C*X beyond 3G
        try {
            power_ratio(i, j, 256.0);
            FAIL("expected infeasibility_error");
        } catch (const infeasibility_error& e) {
            REQUIRE(e.classes().size() == 1);
            CHECK(e.classes()[0] == 7);
        }
    }
}

TEST_CASE("allocate_powers") {
    SystemConfig cfg = interference_limited(256.0);
    SUBCASE("single class") {
        std::vector<TrafficClass> classes{make_class(0, 6.915)};
        const auto alloc = allocate_powers(classes, cfg, 0);
        CHECK(alloc.theta == std::vector<double>{1.0});
    }
    SUBCASE("two identical classes") {
        std::vector<TrafficClass> classes{make_class(0, 6.915), make_class(1, 6.915)};
        const auto alloc = allocate_powers(classes, cfg, 0);
        const double t = 6.915;
        CHECK(alloc.theta[0] == 1.0);
        CHECK(alloc.theta[1] ==
              doctest::Approx((768.0 - 2.0 * t) / (768.0 + 2.0 * t)).epsilon(1e-12));
    }
    SUBCASE("reference stays exactly one and the call is idempotent") {
        std::vector<TrafficClass> classes{make_class(0, 6.915), make_class(1, 11.2975)};
        const auto a = allocate_powers(classes, cfg, 1);
        const auto b = allocate_powers(classes, cfg, 1);
        CHECK(a.theta[1] == 1.0);
        CHECK(a.theta == b.theta);
        CHECK(a.theta[0] == power_ratio(classes[0], classes[1], 256.0));
    }
    SUBCASE("infeasible classes are listed") {
        std::vector<TrafficClass> classes{make_class(0, 500.0), make_class(1, 6.915)};
        try {
            allocate_powers(classes, cfg, 0);
            FAIL("expected infeasibility_error");
        } catch (const infeasibility_error& e) {
            CHECK(e.classes() == std::vector<int>{1});
        }
    }
    SUBCASE("bad reference index") {
        std::vector<TrafficClass> classes{make_class(0, 6.915)};
        CHECK_THROWS_AS(allocate_powers(classes, cfg, 3), config_error);
    }
}
