#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "substar/substitution.hpp"

namespace substar {

using Json = nlohmann::ordered_json;

struct RunConfig {
  unsigned depth = 20;         // diagram depth, >= 8
  unsigned probe_depth = 5;    // oracle prefix bound, 2..8
  std::size_t bound = 0;       // periodicity bound; 0 picks the certification threshold
  unsigned stages = 10;        // K-theory oracle stages, >= 3
  std::size_t samples = 500;   // KMS and gadget samples, >= 1
  std::uint64_t seed = 1;
  std::string format = "text";

  /// Throws Error naming the first bound below its minimum.
  void validate() const;
  std::size_t periodicity_bound(const Substitution& s) const;
};

Json classify_json(const Substitution& s, const RunConfig& cfg);
/// Sets "pass" to false when any relation fails. The mutant relation is appended on request.
Json relations_json(const Substitution& s, const RunConfig& cfg, bool mutant = false);
Json kgroups_json(const Substitution& s, const RunConfig& cfg);
Json measures_json(const Substitution& s, const RunConfig& cfg);
Json kms_json(const Substitution& s, const RunConfig& cfg);
Json dynamics_json(const Substitution& s, const RunConfig& cfg);
Json gadget_json(const Substitution& s, const RunConfig& cfg);
/// Every section above plus diagram statistics and an overall verdict.
Json report_json(const Substitution& s, const RunConfig& cfg);

/// Plain-text rendering of any of the documents above.
std::string render_text(const Json& doc);

}  // namespace substar
