#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "epimc/analysis.hpp"
#include "epimc/bounded.hpp"
#include "epimc/semantics.hpp"
#include "epimc/system.hpp"

namespace epimc {

inline constexpr int kSchemaVersion = 1;

// Everything a model document declares, validated and cross-referenced.
struct LoadedModel {
  SystemModel model;
  Interpretation pi;
  BadStateSpec bad;
  std::string bad_text;
  std::vector<EpistemicSetup> setups;  // document order
  std::uint32_t default_horizon = 8;
  std::string description;
  std::vector<std::string> warnings;  // e.g. propositions no setup ever uses

  const EpistemicSetup& setup(const std::string& name) const;  // throws ModelError
  bool has_setup(const std::string& name) const;
};

// Parses and validates a model document. Structural and cross-reference
// errors throw ModelError with a JSON-pointer style path; reachability
// dependent checks happen in validate_reachability once runs exist.
LoadedModel load_model(const std::filesystem::path& path);
LoadedModel load_model_from_string(const std::string& text, const std::string& origin = "<string>");

// Canonical serialization: fixed key order, entries sorted, no floats.
// save(load(x)) is byte-stable under repeated round-trips.
std::string save_model(const LoadedModel& lm);

// Post-enumeration checks: every reachable state must be declared (throws),
// and declared-but-unreachable states are returned as warnings.
std::vector<std::string> validate_reachability(const LoadedModel& lm, const RunSet& rs);

}  // namespace epimc
