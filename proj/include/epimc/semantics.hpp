#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "epimc/formula.hpp"
#include "epimc/state.hpp"

namespace epimc {

// The interpretation pi: an explicit truth table over Phi x declared states.
// Querying an unmapped (proposition, state) pair throws; absence is an error,
// never false.
class Interpretation {
public:
  Interpretation() = default;
  explicit Interpretation(std::vector<std::string> prop_names);

  void set(const GlobalState& g, std::size_t prop, bool value);

  bool value(std::size_t prop, const GlobalState& g) const;          // throws EvalError
  bool value(const std::string& prop, const GlobalState& g) const;

  std::size_t prop_index(const std::string& name) const;             // throws EvalError
  const std::vector<std::string>& props() const { return props_; }

  bool covers(const GlobalState& g) const;  // all propositions mapped at g

private:
  std::vector<std::string> props_;
  std::unordered_map<std::string, std::size_t> index_;
  // per state: one tri-state entry per proposition (unset / false / true)
  std::unordered_map<GlobalState, std::vector<std::int8_t>, GlobalStateHash> table_;
};

// Canonical point enumeration for a run set, with per-agent grouping of
// points by local state. Evaluation and validity iterate points in this
// order: run index, then time.
class PointIndex {
public:
  explicit PointIndex(const RunSet& rs);

  const RunSet& runs() const { return *rs_; }
  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  std::size_t ordinal(Point p) const;  // throws EvalError if p is not stored

  // Ordinals of every point the agent cannot distinguish from the one given.
  const std::vector<std::uint32_t>& group(std::size_t agent, const LocalState& l) const;

private:
  const RunSet* rs_;
  std::vector<Point> points_;
  std::vector<std::uint32_t> run_offsets_;
  std::vector<std::unordered_map<LocalState, std::vector<std::uint32_t>, LocalStateHash>>
      groups_;
};

// Naive recursive possible-worlds evaluation at one point. Rejects BKnows
// (bounded knowledge needs an epistemic system). This is the reference path;
// eval_pw_all is the memoized one, and the two must agree everywhere.
bool eval_pw(const RunSet& rs, const Interpretation& pi, Point p, const Formula& f);

// Memoized evaluation over every stored point: one pass per subformula in
// post-order. Index i of the result corresponds to idx.points()[i].
std::vector<std::uint8_t> eval_pw_all(const PointIndex& idx, const Interpretation& pi,
                                      const Formula& f);

struct ValidityResult {
  bool valid = false;
  std::optional<Point> counterexample;  // first failure in canonical order
};

ValidityResult check_validity(const PointIndex& idx, const Interpretation& pi,
                              const Formula& f);

}  // namespace epimc
