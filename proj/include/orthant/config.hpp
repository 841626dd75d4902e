#pragma once

#include <string>

#include "orthant/model.hpp"

namespace orthant {

/// A model configuration: the walk, its perturbed companion (sharing the
/// partition), the reward, and the perturbed chain's product-form stationary
/// mixture. See configs/SCHEMA.md for the file format.
struct ModelConfig {
    std::string name;
    RandomWalkModel model;
    RandomWalkModel perturbed;
    PiecewiseFn reward;
    ProductFormDistribution stationary;
};

ModelConfig load_model_config(const std::string& path);
ModelConfig parse_model_config(const std::string& json_text);

/// Built-in model families used by the parameter sweeps.
///
/// Two-node tandem: arrivals lambda into node 1, service mu1 (mu1_star when
/// node 2 is empty), then service mu2; reward = jobs at node 1. The perturbed
/// walk serves node 1 at mu1 everywhere.
ModelConfig make_tandem2(double lambda, double mu1, double mu1_star, double mu2);

/// Three-node tandem: service mu at every node, sped up to mu_star at node 1
/// when nodes 2 and 3 are both empty; reward = jobs at node 1.
ModelConfig make_tandem3(double lambda, double mu, double mu_star);

}  // namespace orthant
