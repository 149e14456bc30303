#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epimc/bounded.hpp"
#include "epimc/formula.hpp"
#include "epimc/semantics.hpp"
#include "epimc/state.hpp"

namespace epimc {

enum class WitnessKind { Clause1, Clause2 };

// Clause 1: literal in a(f(l)) that is false at the point.
// Clause 2: deduction whose antecedents hold at the point but whose
// conclusion fails there.
struct SoundnessWitness {
  WitnessKind kind = WitnessKind::Clause1;
  Point point;
  Literal literal;                 // Clause1
  std::size_t deduction = 0;       // Clause2: index into the setup's deductions
};

struct SoundnessVerdict {
  bool sound = false;
  std::vector<SoundnessWitness> witnesses;  // canonical order, all collected
};

struct AdequacyVerdict {
  bool adequate = false;
  std::vector<Point> missing_knowledge;  // bad points lacking Khat p_bad
  SoundnessVerdict soundness;
};

// The designated "behavior not acceptable" condition; epistemic-operator free.
struct BadStateSpec {
  Formula formula;
};

// Clause 1 at every stored point, clause 2 as validity of antecedents ->
// conclusion for every deduction. All witnesses are collected.
SoundnessVerdict check_soundness(const EpistemicSystem& es);

// Adequate iff every point satisfying bad has Khat bad in Theta of the
// human's local state there, and the system is sound.
AdequacyVerdict check_adequacy(const EpistemicSystem& es, const BadStateSpec& bad);

// A bad point and a good point the human cannot tell apart. When such a pair
// exists, no sound setup can be adequate for this (R, pi), whatever the
// interface knowledge: the verdict is setup-independent.
struct ObstructionResult {
  std::optional<std::pair<Point, Point>> witness;  // (bad, good), canonical-first
};

ObstructionResult adequacy_impossible(const PointIndex& idx, const Interpretation& pi,
                                      const BadStateSpec& bad, std::size_t human_agent);

// The largest explicit map that is sound by construction: f(l) collects the
// literals true at every point where the human's local state is l. Automatic
// rules are empty; deductions are kept only if clause 2 already holds for
// them on (R, pi), and only if their conclusion avoids Khat (otherwise the
// check would depend on the setup being built). Dropped items are reported.
struct SynthesisResult {
  EpistemicSetup setup;
  std::vector<std::string> dropped;  // rendered implications with reasons
};

SynthesisResult synthesize_max_sound_setup(const PointIndex& idx, const Interpretation& pi,
                                           DeductionSet deductions, std::size_t human_agent,
                                           std::string name);

// Checks Khat phi -> K_h phi for every formula actually present in some
// Theta(l). Only meaningful on sound systems.
struct KnowledgeBridge {
  enum class Status { Verified, Violation, NotApplicable } status = Status::Verified;
  std::optional<Point> point;
  std::optional<Formula> formula;
};

KnowledgeBridge verify_knowledge_bridge(const EpistemicSystem& es);

}  // namespace epimc
