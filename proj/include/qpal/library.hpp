#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "qpal/formula.hpp"

namespace qpal::library {

// The root-and-stem formulas over agents a, b and atom x.
//
//   root = box (M a (~x & K b ~x) -> K a (~x -> K b ~x))
//   stem = dia (M a (~x & K b ~x) & M a (~x & M b x))
//   tier = K b (x & M a ~x & K a (~x -> M b x))
//   fmp  = tier & M b root & M b stem
//          & K b (stem -> dia (tier & K b stem))
//          & K b (root -> box (tier -> M b stem))

enum class Flavor { Arbitrary, Group, Coalition };

/// Replaces box/dia by [A]/<A> (Group) or [<A>]/<[A]> (Coalition); Arbitrary is the identity.
Formula substitute_quantifiers(const Formula& f, Flavor flavor, const AgentGroup& all);

const AgentGroup& default_agents();

Formula root(Flavor flavor = Flavor::Arbitrary, const AgentGroup& all = default_agents());
Formula stem(Flavor flavor = Flavor::Arbitrary, const AgentGroup& all = default_agents());
Formula tier();

/// Conjunct 1..3 of fmp.
Formula fmp_conjunct(int which, Flavor flavor = Flavor::Arbitrary,
                     const AgentGroup& all = default_agents());

Formula fmp(Flavor flavor = Flavor::Arbitrary, const AgentGroup& all = default_agents());
Formula fmp_gal(const AgentGroup& all = default_agents());
Formula fmp_cal(const AgentGroup& all = default_agents());

/// M a M b p{2i}: keeps the i-th stem together with the worlds below it.
Formula stem_witness(std::size_t i);

/// K a (~x -> K b (x -> K a ~p{j})): keeps s_0 and discards every other stem.
Formula root_refuter(std::size_t j);

/// Looks up fmp, fmp_gal, fmp_cal, root, stem, tier, stem_witness:I (also "stem_witness I"
/// and "stem_witness(I)").
std::optional<Formula> named(const std::string& name, const AgentGroup& all = default_agents());

}  // namespace qpal::library
