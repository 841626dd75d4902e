#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "orthant/model.hpp"

using namespace orthant;
using namespace orthant::testing;

TEST_CASE("partial sums on the two-node tandem") {
    ModelConfig cfg = tandem2_half_load();
    const RandomWalkModel& m = cfg.model;

    PartialSums interior = partial_sums(m, {3, 2}, 0);
    CHECK(interior.up == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(interior.down == doctest::Approx(0.2).epsilon(1e-14));

    // boundary: no mass below zero
    CHECK(partial_sums(m, {3, 0}, 1).down == 0.0);
    CHECK(partial_sums(m, {0, 4}, 0).down == 0.0);

    // boundary speed-up component
    PartialSums axis = partial_sums(m, {3, 0}, 0);
    CHECK(axis.up == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(axis.down == doctest::Approx(0.4).epsilon(1e-14));

    CHECK_THROWS_AS(partial_sums(m, {3, 2}, 5), std::invalid_argument);
}

TEST_CASE("partial sums add to one in every component and dimension") {
    ModelConfig two = tandem2_half_load();
    ModelConfig three = tandem3_low_load();
    for (const RandomWalkModel* m : {&two.model, &three.model}) {
        for (int k = 0; k < m->num_components(); ++k)
            for (int i = 0; i < m->dim(); ++i) {
                PartialSums s = partial_sums_component(*m, k, i);
                CHECK(std::abs(s.up + s.zero + s.down - 1.0) <= 1e-12);
            }
    }
}

TEST_CASE("negative drift decision") {
    DriftReport tandem = has_negative_drift(tandem2_half_load().model);
    CHECK(tandem.negative);
    CHECK(tandem.supremum[0] == doctest::Approx(-0.1).epsilon(1e-13));
    CHECK(tandem.supremum[1] == doctest::Approx(-0.2).epsilon(1e-13));

    // zero drift in the interior
    CHECK_FALSE(has_negative_drift(birth_death(0.3, 0.3)).negative);

    // the three-node tandem moves mass between nodes: dimension 2 balances out
    DriftReport three = has_negative_drift(tandem3_low_load().model);
    CHECK_FALSE(three.negative);
    CHECK(three.supremum[1] == doctest::Approx(0.0));
}

TEST_CASE("uniformization") {
    ModelConfig cfg = tandem2_half_load();
    const Component& interior = cfg.model.component(cfg.model.component_of({2, 3}));
    CHECK(interior.prob({1, 0}) == doctest::Approx(0.1));
    CHECK(interior.prob({-1, 1}) == doctest::Approx(0.2));
    CHECK(interior.prob({0, -1}) == doctest::Approx(0.4));
    CHECK(interior.prob({0, 0}) == doctest::Approx(0.3));

    SUBCASE("all rates zero gives the identity chain") {
        CtmcSpec spec;
        spec.dimension = 1;
        spec.uniformization_constant = 1.0;
        spec.components = {{"zero", {Box({0}, {0})}, {}},
                           {"pos", {Box({1}, {kUnbounded})}, {}}};
        RandomWalkModel m = uniformize(spec);
        for (int k = 0; k < 2; ++k) {
            const Component& c = m.component(k);
            CHECK(c.prob(Step(1, 0)) == 1.0);
        }
    }

    SUBCASE("three-node steps") {
        ModelConfig cfg3 = tandem3_low_load();
        const RandomWalkModel& m3 = cfg3.model;
        const Component& c = m3.component(m3.component_of({2, 2, 2}));
        CHECK(c.prob({1, 0, 0}) == doctest::Approx(0.08));
        CHECK(c.prob({-1, 1, 0}) == doctest::Approx(0.2));
        CHECK(c.prob({0, -1, 1}) == doctest::Approx(0.2));
        CHECK(c.prob({0, 0, -1}) == doctest::Approx(0.2));
    }

    SUBCASE("rate sum above the constant is rejected") {
        CtmcSpec spec;
        spec.dimension = 1;
        spec.uniformization_constant = 1.0;
        spec.components = {{"zero", {Box({0}, {0})}, {{{1}, 0.7}}},
                           {"pos", {Box({1}, {kUnbounded})}, {{{1}, 0.7}, {{-1}, 0.7}}}};
        CHECK_THROWS_AS(uniformize(spec), std::invalid_argument);
    }

    SUBCASE("expected one-step coordinate change equals rate drift") {
        const RandomWalkModel& m = cfg.model;
        for (int k = 0; k < m.num_components(); ++k)
            for (int i = 0; i < m.dim(); ++i) {
                const Component& c = m.component(k);
                double mean = 0.0;
                for (size_t s = 0; s < c.steps.size(); ++s) mean += c.probs[s] * c.steps[s][i];
                PartialSums ps = partial_sums_component(m, k, i);
                CHECK(mean == doctest::Approx(ps.up - ps.down).epsilon(1e-13));
            }
    }
}

TEST_CASE("piecewise evaluation") {
    ModelConfig cfg = tandem2_half_load();
    CHECK(evaluate(cfg.model, cfg.reward, {5, 2}) == doctest::Approx(5.0));

    PiecewiseFn sq = PiecewiseFn::zero(cfg.model.num_components(), 2, 2);
    for (int k = 0; k < cfg.model.num_components(); ++k) sq.eta[k][0] = 1.0;
    CHECK(evaluate(cfg.model, sq, {3, 0}) == doctest::Approx(9.0));

    RandomWalkModel ex = example_partition_model();
    PiecewiseFn fn = PiecewiseFn::zero(ex.num_components(), 2, 1);
    const int k5 = ex.component_of({2, 4});
    CHECK(ex.component(k5).name == "C5");
    fn.h0[k5] = 2.0;
    fn.h[k5][0] = 1.0;
    fn.h[k5][1] = 3.0;
    CHECK(evaluate(ex, fn, {2, 4}) == doctest::Approx(16.0));
}

TEST_CASE("partition is disjoint and exhaustive on random states") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coord(0, 100);
    ModelConfig two = tandem2_half_load();
    RandomWalkModel ex = example_partition_model();
    for (const RandomWalkModel* m : {&two.model, &ex}) {
        for (int trial = 0; trial < 10000; ++trial) {
            State n{coord(rng), coord(rng)};
            int claims = 0;
            for (const Component& c : m->components())
                if (c.contains(n)) ++claims;
            CHECK(claims == 1);
        }
    }
}

TEST_CASE("component construction rejects broken partitions") {
    CtmcSpec spec;
    spec.dimension = 1;
    spec.uniformization_constant = 1.0;
    // a single component covering {0,1,...} mixes boundary and interior
    spec.components = {{"all", {Box({0}, {kUnbounded})}, {{{1}, 0.2}}}};
    CHECK_THROWS_AS(uniformize(spec), std::invalid_argument);

    // overlapping regions
    CtmcSpec overlap;
    overlap.dimension = 1;
    overlap.uniformization_constant = 1.0;
    overlap.components = {{"zero", {Box({0}, {0})}, {{{1}, 0.2}}},
                          {"a", {Box({1}, {kUnbounded})}, {{{1}, 0.2}, {{-1}, 0.3}}},
                          {"b", {Box({2}, {kUnbounded})}, {{{1}, 0.2}, {{-1}, 0.3}}}};
    CHECK_THROWS_AS(uniformize(overlap), std::invalid_argument);
}

TEST_CASE("product-form moments") {
    // single geometric, mean rho/(1-rho)
    RandomWalkModel bd = birth_death(0.1, 0.4);
    ProductFormDistribution half({{1.0, {0.5}}});
    PiecewiseFn coord = PiecewiseFn::coordinate(bd.num_components(), 1, 0);
    CHECK(product_form_moment(bd, half, coord) == doctest::Approx(1.0).epsilon(1e-12));

    PiecewiseFn one = PiecewiseFn::uniform(bd.num_components(), 1, 1.0, {0.0});
    CHECK(product_form_moment(bd, half, one) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(half.total_mass() == doctest::Approx(1.0).epsilon(1e-12));

    // two-dimensional product form: E[n1 + n2] = 1 + 1/3
    ModelConfig cfg = tandem2_half_load();
    ProductFormDistribution pf({{1.0, {0.5, 0.25}}});
    PiecewiseFn sum = PiecewiseFn::uniform(cfg.model.num_components(), 2, 0.0, {1.0, 1.0});
    CHECK(product_form_moment(cfg.model, pf, sum) ==
          doctest::Approx(1.0 + 1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("closed-form moments match direct summation") {
    // ratios kept low enough that the coordinate-80 tail of n^2 rho^n sits
    // far below the comparison tolerance
    ModelConfig cfg = tandem2_half_load();
    ProductFormDistribution pf({{0.6, {0.55, 0.3}}, {0.4, {0.2, 0.5}}});
    CHECK(pf.total_mass() == doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    PiecewiseFn fn = PiecewiseFn::zero(cfg.model.num_components(), 2, 2);
    for (int k = 0; k < cfg.model.num_components(); ++k) {
        fn.h0[k] = unif(rng);
        for (int i = 0; i < 2; ++i) {
            fn.h[k][i] = unif(rng);
            fn.eta[k][i] = unif(rng);
        }
    }
    double direct = 0.0;
    for (int a = 0; a <= 80; ++a)
        for (int b = 0; b <= 80; ++b) {
            State n{a, b};
            direct += pf.density(n) * evaluate(cfg.model, fn, n);
        }
    CHECK(product_form_moment(cfg.model, pf, fn) == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("scaled mass") {
    ProductFormDistribution pf({{1.0, {0.5, 0.25}}});
    // unscaled over the whole orthant = total mass
    Box all({0, 0}, {kUnbounded, kUnbounded});
    CHECK(scaled_mass(pf, all, {1.0, 1.0}) == doctest::Approx(1.0));
    // scale above 1/rho diverges on an unbounded edge
    CHECK(scaled_mass(pf, all, {2.5, 1.0}) == std::numeric_limits<double>::infinity());
    // bounded boxes tolerate any scale
    Box slab({0, 0}, {3, 0});
    double direct = 0.0;
    for (int a = 0; a <= 3; ++a) direct += 0.5 * 0.75 * std::pow(0.5 * 2.5, a);
    CHECK(scaled_mass(pf, slab, {2.5, 1.0}) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("model config files round-trip") {
    const char* text = R"JSON({
      "name": "two-node tandem",
      "dimension": 2,
      "type": "ctmc",
      "uniformization_constant": 1.0,
      "components": [
        {"name": "origin",   "boxes": [{"lo": [0,0], "hi": [0,0]}],
         "rates": [{"step": [1,0], "value": 0.1}]},
        {"name": "axis1",    "boxes": [{"lo": [1,0], "hi": [null,0]}],
         "rates": [{"step": [1,0], "value": 0.1}, {"step": [-1,1], "value": 0.4}]},
        {"name": "axis2",    "boxes": [{"lo": [0,1], "hi": [0,null]}],
         "rates": [{"step": [1,0], "value": 0.1}, {"step": [0,-1], "value": 0.4}]},
        {"name": "interior", "boxes": [{"lo": [1,1], "hi": [null,null]}],
         "rates": [{"step": [1,0], "value": 0.1}, {"step": [-1,1], "value": 0.2},
                   {"step": [0,-1], "value": 0.4}]}
      ],
      "reward": {"degree": 1, "default": {"constant": 0.0, "linear": [1, 0]}},
      "perturbed": {"components": [
        {"name": "axis1", "rates": [{"step": [1,0], "value": 0.1},
                                    {"step": [-1,1], "value": 0.2}]}]},
      "stationary": {"mixture": [{"weight": 1.0, "ratios": [0.5, 0.25]}]}
    })JSON";
    ModelConfig cfg = parse_model_config(text);
    ModelConfig ref = tandem2_half_load();
    CHECK(cfg.model.num_components() == ref.model.num_components());
    for (int k = 0; k < cfg.model.num_components(); ++k)
        CHECK(cfg.model.component(k).probs == ref.model.component(k).probs);
    for (int k = 0; k < cfg.model.num_components(); ++k)
        CHECK(cfg.perturbed.component(k).probs == ref.perturbed.component(k).probs);
    CHECK(cfg.stationary.total_mass() == doctest::Approx(1.0));
    CHECK(evaluate(cfg.model, cfg.reward, {7, 3}) == doctest::Approx(7.0));
}
