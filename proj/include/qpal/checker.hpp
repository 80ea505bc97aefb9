#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qpal/bisimulation.hpp"
#include "qpal/formula.hpp"
#include "qpal/model.hpp"

namespace qpal {

struct CheckOptions {
  /// Largest quotient any quantifier may enumerate.
  std::size_t block_cap = kDefaultBlockCap;
};

/// Extensions reachable by joint announcements of a group: intersections over the group of
/// kernel_i(X_i), X_i closed. Deduplicated; may contain the empty set.
struct GroupExtensionFamily {
  AgentGroup group;
  std::vector<StateSet> sets;
  /// generators[k][j]: the closed set known by the j-th agent of `group` (in order) that
  /// produced sets[k].
  std::vector<std::vector<StateSet>> generators;

  bool contains(const StateSet& s) const;
};

/// Which family of announcements a diamond ranges over.
struct AnnouncementMode {
  enum class Kind { Arbitrary, Group, Coalition };
  Kind kind = Kind::Arbitrary;
  AgentGroup group;

  static AnnouncementMode arbitrary() { return {}; }
  static AnnouncementMode of_group(AgentGroup g) { return {Kind::Group, std::move(g)}; }
  static AnnouncementMode coalition(AgentGroup g) { return {Kind::Coalition, std::move(g)}; }

  std::string name() const;
};

/// Exact evaluation of the full language on one finite model.
///
/// Every quantifier ranges over announcement extensions instead of formulas: closed sets of
/// the current submodel's quotient (over the declared vocabulary) for box, and the group
/// families for the group and coalition operators. All submodels are represented by their
/// state set in the original model's indexing, which is also the memo key.
///
/// Not thread-safe; use one Checker per thread.
class Checker {
 public:
  explicit Checker(Model m, CheckOptions opts = {});
  ~Checker();
  Checker(Checker&&) noexcept;
  Checker& operator=(Checker&&) noexcept;

  const Model& model() const;

  StateSet extension(const Formula& f);
  /// Extension in the submodel on `domain`.
  StateSet extension_within(const StateSet& domain, const Formula& f);
  bool holds(std::size_t state, const Formula& f);

  /// Coarsest bisimulation of the submodel on `domain` over the declared vocabulary.
  Partition quotient_of(const StateSet& domain) const;

  GroupExtensionFamily group_extensions(const StateSet& domain, const AgentGroup& g);

  /// A certificate for <mode> body at `point`, or nullopt when the diamond fails.
  /// Arbitrary mode: a closed set kept and its characteristic formula. Group and coalition
  /// modes: a family member and the joint announcement of K_i X_i. Candidates are tried
  /// smallest first; the returned certificate has been re-verified.
  std::optional<Certificate> diamond_witness(std::size_t point, const Formula& body,
                                             const AnnouncementMode& mode);

  /// True when announcing `kept` (under `mode`) makes `body` true at `point`; for coalition
  /// mode, for every counter-announcement of the other agents.
  bool verify_witness(std::size_t point, const Formula& body, const AnnouncementMode& mode,
                      const StateSet& kept);

  /// Number of memoised (domain, subformula) results so far.
  std::size_t memo_size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool check(const PointedModel& pm, const Formula& f, CheckOptions opts = {});

std::optional<Certificate> diamond_witness(const PointedModel& pm, const Formula& body,
                                           const AnnouncementMode& mode, CheckOptions opts = {});

GroupExtensionFamily group_extensions(const Model& m, const AgentGroup& g,
                                      CheckOptions opts = {});

/// Per-variant evaluation of the no-finite-model formula and its three conjuncts.
struct FmpReport {
  struct Witness {
    /// "stem escape" (second conjunct) or "root refutation" (third conjunct).
    std::string role;
    std::size_t world = 0;
    std::optional<Certificate> certificate;
  };
  struct Variant {
    std::string name;  // apal, gal, cal
    bool conjunct[3] = {false, false, false};
    bool fmp = false;
    std::vector<Witness> witnesses;
  };
  std::size_t point = 0;
  bool root = false;
  bool stem = false;
  std::vector<Variant> variants;
};

/// Evaluates fmp, fmp_gal and fmp_cal at the point with certificates for the b-alternatives:
/// each stem world gets its escape announcement, each root world its refuting one if any.
FmpReport check_fmp_suite(const PointedModel& pm, CheckOptions opts = {});

}  // namespace qpal
