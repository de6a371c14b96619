#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pubcausal/adjustment.hpp"
#include "pubcausal/common.hpp"

using namespace pubcausal;

namespace {

// binary confounder c -> x, c -> y, x -> y with fixed conditional tables
DiscreteTable confounded_fixture(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DiscreteTable t;
    t.names = {"c", "x", "y"};
    t.columns.assign(3, {});
    for (size_t i = 0; i < n; ++i) {
        const double c = u(rng) < 0.4 ? 1.0 : 0.0;
        const double px = c == 1.0 ? 0.8 : 0.3;
        const double x = u(rng) < px ? 1.0 : 0.0;
        const double py = 0.15 + 0.5 * x + 0.25 * c;
        const double y = u(rng) < py ? 1.0 : 0.0;
        t.columns[0].push_back(c);
        t.columns[1].push_back(x);
        t.columns[2].push_back(y);
    }
    return t;
}

}  // namespace

TEST_CASE("adjustment matches the brute-force enumeration on the confounder fixture") {
    const DiscreteTable t = confounded_fixture(3000, 17);
    const double direct = do_effect(t, {0}, 1, 1.0, 2, 1.0);
    const double oracle = oracles::do_effect_brute_force(t, {0}, 1, 1.0, 2, 1.0);
    CHECK(std::fabs(direct - oracle) < 1e-12);

    // intervention breaks the confounding: P(y | do(x)) differs from P(y | x)
    const double conditional = do_effect(t, {}, 1, 1.0, 2, 1.0);
    CHECK(std::fabs(direct - conditional) > 0.005);
}

TEST_CASE("no parents reduces to the conditional") {
    std::mt19937_64 rng(5);
    DiscreteTable t;
    t.names = {"x", "y"};
    t.columns.assign(2, {});
    for (size_t i = 0; i < 2000; ++i) {
        t.columns[0].push_back(static_cast<double>(rng() % 2));
        t.columns[1].push_back(static_cast<double>(rng() % 2));
    }
    const double effect = do_effect(t, {}, 0, 1.0, 1, 1.0);
    size_t with_x = 0, with_xy = 0, with_y = 0;
    for (size_t i = 0; i < 2000; ++i) {
        if (t.columns[1][i] == 1.0) ++with_y;
        if (t.columns[0][i] == 1.0) {
            ++with_x;
            if (t.columns[1][i] == 1.0) ++with_xy;
        }
    }
    CHECK(effect == doctest::Approx(static_cast<double>(with_xy) / with_x).epsilon(1e-12));
    // independence: do() equals the marginal up to sampling noise
    CHECK(std::fabs(effect - static_cast<double>(with_y) / 2000.0) < 0.05);
}

TEST_CASE("deterministic relationship gives probability one") {
    DiscreteTable t;
    t.names = {"x", "y"};
    t.columns = {{0, 1, 0, 1, 1, 0}, {0, 1, 0, 1, 1, 0}};
    CHECK(do_effect(t, {}, 0, 1.0, 1, 1.0) == 1.0);
}

TEST_CASE("randomized discrete fixtures agree with brute force") {
    std::mt19937_64 rng(900);
    for (int trial = 0; trial < 20; ++trial) {
        const size_t p = 2 + rng() % 2;  // parents
        const size_t levels = 2 + rng() % 3;
        DiscreteTable t;
        t.names = {"x", "y"};
        std::vector<size_t> parents;
        for (size_t k = 0; k < p; ++k) {
            t.names.push_back("z" + std::to_string(k));
            parents.push_back(2 + k);
        }
        t.columns.assign(t.names.size(), {});
        for (size_t i = 0; i < 600; ++i) {
            std::vector<double> z(p);
            for (size_t k = 0; k < p; ++k) z[k] = static_cast<double>(rng() % levels);
            double bias = 0.0;
            for (double v : z) bias += v;
            const double x = static_cast<double>((rng() % levels + static_cast<size_t>(bias)) % levels);
            const double y = static_cast<double>((rng() % levels + static_cast<size_t>(x)) % levels);
            t.columns[0].push_back(x);
            t.columns[1].push_back(y);
            for (size_t k = 0; k < p; ++k) t.columns[2 + k].push_back(z[k]);
        }
        const double direct = do_effect(t, parents, 0, 1.0, 1, 1.0);
        const double oracle = oracles::do_effect_brute_force(t, parents, 0, 1.0, 1, 1.0);
        CHECK(std::fabs(direct - oracle) < 1e-12);
    }
}

TEST_CASE("graph overloads pull parents from discovery output") {
    const DiscreteTable t = confounded_fixture(2000, 23);
    Cpdag g({"c", "x", "y"});
    g.add_directed(0, 1);
    g.add_directed(0, 2);
    g.add_directed(1, 2);
    const double via_graph = do_effect(g, t, "x", 1.0, "y", 1.0);
    CHECK(via_graph == doctest::Approx(do_effect(t, {0}, 1, 1.0, 2, 1.0)).epsilon(1e-12));

    CHECK_THROWS_AS(do_effect(g, t, "q", 1.0, "y", 1.0), DataError);

    const EnsembleGraph ens = ensemble_merge({g, g, g, g});
    CHECK(do_effect(ens, t, "x", 1.0, "y", 1.0) == doctest::Approx(via_graph).epsilon(1e-12));
}

TEST_CASE("level cap is enforced") {
    DiscreteTable t;
    t.names = {"x", "y"};
    t.columns.assign(2, {});
    for (int i = 0; i < 20; ++i) {
        t.columns[0].push_back(static_cast<double>(i));  // 20 levels
        t.columns[1].push_back(0.0);
    }
    CHECK_THROWS_AS(do_effect(t, {}, 0, 1.0, 1, 0.0), DataError);
}
