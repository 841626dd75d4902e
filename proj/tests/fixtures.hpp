#pragma once

#include "orthant/config.hpp"

namespace orthant::testing {

/// Two-node tandem at the reference operating point: lambda 0.1, mu1 0.2,
/// boundary speed-up mu1* = mu2 = 0.4.
inline ModelConfig tandem2_half_load() { return make_tandem2(0.1, 0.2, 0.4, 0.4); }

/// Three-node tandem at load 0.4 with boundary speed-up 1.5 mu.
inline ModelConfig tandem3_low_load() { return make_tandem3(0.08, 0.2, 0.3); }

/// The six-component example partition of the quarter plane: axis split at 1
/// and 5 in the first coordinate, at 1 in the second; uniform dummy rates.
inline RandomWalkModel example_partition_model() {
    const int inf = kUnbounded;
    CtmcSpec spec;
    spec.dimension = 2;
    spec.uniformization_constant = 1.0;
    auto comp = [&](const std::string& name, Box box,
                    std::vector<std::pair<Step, double>> rates) {
        CtmcSpec::RateComponent rc;
        rc.name = name;
        rc.region = {std::move(box)};
        rc.rates = std::move(rates);
        spec.components.push_back(std::move(rc));
    };
    comp("C1", Box({0, 0}, {0, 0}), {{{1, 0}, 0.2}, {{0, 1}, 0.2}, {{1, 1}, 0.1}});
    comp("C2", Box({1, 0}, {4, 0}),
         {{{1, 0}, 0.2}, {{-1, 0}, 0.2}, {{0, 1}, 0.1}, {{1, 1}, 0.05}, {{-1, 1}, 0.05}});
    comp("C3", Box({5, 0}, {inf, 0}),
         {{{1, 0}, 0.1}, {{-1, 0}, 0.3}, {{0, 1}, 0.1}, {{1, 1}, 0.05}, {{-1, 1}, 0.05}});
    comp("C4", Box({0, 1}, {0, inf}),
         {{{1, 0}, 0.2}, {{0, 1}, 0.1}, {{0, -1}, 0.2}, {{1, 1}, 0.05}, {{1, -1}, 0.05}});
    comp("C5", Box({1, 1}, {4, inf}),
         {{{1, 0}, 0.1}, {{-1, 0}, 0.2}, {{0, 1}, 0.05}, {{0, -1}, 0.2}, {{1, 1}, 0.05},
          {{1, -1}, 0.05}, {{-1, 1}, 0.05}, {{-1, -1}, 0.05}});
    comp("C6", Box({5, 1}, {inf, inf}),
         {{{1, 0}, 0.05}, {{-1, 0}, 0.25}, {{0, 1}, 0.05}, {{0, -1}, 0.25}, {{1, 1}, 0.02},
          {{1, -1}, 0.03}, {{-1, 1}, 0.02}, {{-1, -1}, 0.03}});
    return uniformize(spec);
}

/// 1-D birth-death walk: up 0.1, down 0.4 away from zero.
inline RandomWalkModel birth_death(double p, double q) {
    CtmcSpec spec;
    spec.dimension = 1;
    spec.uniformization_constant = 1.0;
    CtmcSpec::RateComponent at0{"zero", {Box({0}, {0})}, {{{1}, p}}};
    CtmcSpec::RateComponent pos{"pos", {Box({1}, {kUnbounded})}, {{{1}, p}, {{-1}, q}}};
    spec.components = {at0, pos};
    return uniformize(spec);
}

}  // namespace orthant::testing
