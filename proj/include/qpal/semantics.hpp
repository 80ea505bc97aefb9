#pragma once

#include "qpal/formula.hpp"
#include "qpal/model.hpp"

namespace qpal {

// Truth for the quantifier-free language (epistemic logic with public announcements).
// Announcements are evaluated by restricting the model. All functions throw EvalError on a
// quantifier or on an agent the model does not declare.

/// States of `m` where `f` holds.
StateSet extension(const Model& m, const Formula& f);

/// States of the submodel of `m` on `domain` where `f` holds, in the indexing of `m`.
StateSet extension_within(const Model& m, const StateSet& domain, const Formula& f);

bool holds(const PointedModel& pm, const Formula& f);

/// The announcement update: `m` restricted to the extension of `f`.
/// Throws ModelError when `f` holds nowhere.
Model update(const Model& m, const Formula& f);

/// States of `domain` whose whole `rel` class (within `domain`) lies in `x`.
StateSet kernel_within(const Partition& rel, const StateSet& domain, const StateSet& x);

}  // namespace qpal
