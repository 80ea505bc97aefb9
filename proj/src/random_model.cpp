#include "qpal/random_model.hpp"

namespace qpal {

PointedModel random_model(std::mt19937_64& rng, const RandomModelOptions& opts) {
  std::uniform_int_distribution<std::size_t> size_dist(opts.min_states, opts.max_states);
  std::size_t n = size_dist(rng);

  Model::Spec spec;
  for (std::size_t i = 0; i < n; ++i) spec.states.push_back("s" + std::to_string(i));
  spec.agents = opts.agents;

  std::uniform_int_distribution<std::size_t> block_dist(0, n - 1);
  for (const auto& a : opts.agents) {
    Model::BlockList blocks(n);
    for (std::size_t i = 0; i < n; ++i) blocks[block_dist(rng)].push_back(spec.states[i]);
    std::erase_if(blocks, [](const auto& b) { return b.empty(); });
    spec.relations[a] = blocks;
  }

  std::bernoulli_distribution coin(0.5);
  for (const auto& p : opts.atoms) {
    auto& v = spec.valuation[p];
    for (std::size_t i = 0; i < n; ++i)
      if (coin(rng)) v.push_back(spec.states[i]);
  }

  std::size_t point = block_dist(rng);
  return PointedModel(Model::build(spec), point);
}

}  // namespace qpal
