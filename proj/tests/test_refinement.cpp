#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "orthant/refinement.hpp"

using namespace orthant;
using namespace orthant::testing;

TEST_CASE("one-step refinement of the example partition matches the hand layout") {
    RandomWalkModel ex = example_partition_model();
    Refinement ref = refine(ex, 1);
    // first coordinate: singletons 0..5 then the tail; second: 0,1 then tail
    CHECK(ref.interval_starts()[0] == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
    CHECK(ref.interval_starts()[1] == std::vector<int>{0, 1, 2});
    CHECK(ref.size() == 21);
    for (const RefinedComponent& rc : ref.pieces())
        if (rc.unbounded.empty()) CHECK(rc.box.cardinality() == 1);
}

TEST_CASE("default refinement supports two-step shifts") {
    RandomWalkModel ex = example_partition_model();
    Refinement ref = refine(ex);
    CHECK(ref.interval_starts()[0].size() == 8);
    CHECK(ref.interval_starts()[1].size() == 4);
    CHECK(ref.size() == 32);

    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coord(0, 30);
    std::uniform_int_distribution<int> off(-2, 2);
    for (int trial = 0; trial < 10000; ++trial) {
        State n{coord(rng), coord(rng)};
        Offset d{off(rng), off(rng)};
        if (n[0] + d[0] < 0 || n[1] + d[1] < 0) continue;
        const int j = ref.index_of(n);
        CHECK(ref.piece(j).box.contains(n));
        // the shift table agrees with a direct component lookup
        CHECK(shift_component(ref, j, d) == ex.component_of(add(n, d)));
    }
}

TEST_CASE("one-dimensional splits") {
    RandomWalkModel bd = birth_death(0.1, 0.4);
    Refinement ref = refine(bd, 1);
    // {0},{1},{2,...}
    REQUIRE(ref.size() == 3);
    CHECK(ref.piece(0).box.lo == std::vector<int>{0});
    CHECK(ref.piece(0).box.hi == std::vector<int>{0});
    CHECK(ref.piece(1).box.lo == std::vector<int>{1});
    CHECK(ref.piece(1).box.hi == std::vector<int>{1});
    CHECK(ref.piece(2).box.lo == std::vector<int>{2});
    CHECK(ref.piece(2).box.hi == std::vector<int>{kUnbounded});
}

TEST_CASE("pieces sit inside single partition components") {
    ModelConfig cfg = tandem2_half_load();
    Refinement ref = refine(cfg.model);
    for (const RefinedComponent& rc : ref.pieces()) {
        const int k = cfg.model.component_of(rc.corner);
        CHECK(k == rc.c_index);
        // probe deep along unbounded dimensions: still the same component
        CHECK(cfg.model.component_of(ref.probe(rc.index, 7)) == k);
    }
}

TEST_CASE("shift queries") {
    RandomWalkModel ex = example_partition_model();
    Refinement ref = refine(ex);

    // the piece holding (1,1), shifted diagonally down, lands at the origin
    const int j11 = ref.index_of({1, 1});
    CHECK(ex.component(shift_component(ref, j11, {-1, -1})).name == "C1");
    // zero shift returns the piece's own component
    CHECK(shift_component(ref, j11, {0, 0}) == ref.piece(j11).c_index);
    // a deep interior piece shifted diagonally up stays in the top corner component
    const int jdeep = ref.index_of({20, 20});
    CHECK(ex.component(shift_component(ref, jdeep, {1, 1})).name == "C6");
    // shifts that exit the orthant for some member are rejected
    CHECK_THROWS_AS(shift_component(ref, ref.index_of({0, 0}), {-1, 0}), std::invalid_argument);
}

TEST_CASE("tandem refinements are the expected grids") {
    ModelConfig two = tandem2_half_load();
    Refinement r2 = refine(two.model);
    CHECK(r2.size() == 16);

    ModelConfig three = tandem3_low_load();
    Refinement r3 = refine(three.model);
    CHECK(r3.size() == 64);

    // membership function agrees with box containment everywhere sampled
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> coord(0, 12);
    for (int trial = 0; trial < 2000; ++trial) {
        State n{coord(rng), coord(rng), coord(rng)};
        const RefinedComponent& rc = r3.piece(r3.index_of(n));
        CHECK(rc.box.contains(n));
    }
}

TEST_CASE("debug dump prints one line per piece") {
    RandomWalkModel bd = birth_death(0.1, 0.4);
    Refinement ref = refine(bd, 1);
    std::ostringstream os;
    ref.dump(os);
    int lines = 0;
    for (char c : os.str())
        if (c == '\n') ++lines;
    CHECK(lines == ref.size());
    CHECK(os.str().find("corner") != std::string::npos);
}
