#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpal/checker.hpp"

namespace qpal::repro {

struct Claim {
  std::string id;
  std::string description;
  nlohmann::json expected;
  nlohmann::json computed;
  /// Kept set (as labels) and the announcement producing it.
  std::optional<std::vector<std::string>> kept;
  std::optional<std::string> formula;
  double elapsed_ms = 0;

  bool pass() const { return expected == computed; }
};

struct Report {
  std::string suite;
  std::vector<Claim> claims;

  bool passed() const;
  nlohmann::json to_json(bool timing) const;
  std::string to_table(bool timing) const;
};

Report example1(CheckOptions opts);
/// The claim bundle for truncation(n); `suite` names the report.
Report truncation(std::size_t n, CheckOptions opts, const std::string& suite = {});
/// Claims identical to truncation(2), evaluated on the hand-listed figure model.
Report fig2(CheckOptions opts);
Report random_sweep(std::size_t models, std::size_t max_states, std::uint64_t seed,
                    CheckOptions opts);

}  // namespace qpal::repro
