#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "qpal/model.hpp"

namespace qpal {

struct RandomModelOptions {
  std::size_t min_states = 1;
  std::size_t max_states = 6;
  std::vector<std::string> agents{"a", "b"};
  std::vector<std::string> atoms{"x", "p1", "p2"};
};

/// States s0..s{n-1}, each agent's relation a uniformly random block assignment, each atom
/// true at each state with probability 1/2. The point is uniform.
PointedModel random_model(std::mt19937_64& rng, const RandomModelOptions& opts = {});

}  // namespace qpal
