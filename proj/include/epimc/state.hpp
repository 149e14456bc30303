#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace epimc {

enum class AgentKind { Environment, Human, Automation };

struct VariableDecl {
  std::string name;
  std::vector<std::string> domain;  // finite set of value symbols
};

struct AgentDecl {
  std::string name;
  AgentKind kind = AgentKind::Automation;
  std::vector<VariableDecl> variables;
};

// One agent's view of the world: a value index per declared variable.
struct LocalState {
  std::uint32_t agent = 0;              // index in canonical agent order
  std::vector<std::uint16_t> values;    // one per declared variable

  auto operator<=>(const LocalState&) const = default;
};

// A snapshot of every agent's local state, in canonical agent order
// (environment first when present, then declaration order).
struct GlobalState {
  std::vector<LocalState> parts;

  auto operator<=>(const GlobalState&) const = default;
};

// One action index per agent, in canonical agent order.
struct JointAction {
  std::vector<std::uint16_t> actions;

  auto operator<=>(const JointAction&) const = default;
};

// A finite prefix of a history. When absorbing is set, the final state has a
// self-loop joint action enabled and evaluation beyond the stored prefix
// stutters on it.
struct Run {
  std::vector<GlobalState> states;    // states[0] is the initial state
  std::vector<JointAction> actions;   // actions[i] connects states[i] -> states[i+1]
  bool absorbing = false;
};

// A (run, time) pair at which formulas are evaluated.
struct Point {
  std::uint32_t run = 0;
  std::uint32_t time = 0;

  auto operator<=>(const Point&) const = default;
};

// The system R: every run of the model up to the horizon.
struct RunSet {
  std::vector<std::string> agents;  // canonical agent order, by name
  std::vector<Run> runs;
  std::uint32_t horizon = 0;

  std::size_t agent_index(const std::string& name) const;  // throws EvalError
};

// Agent's local state at a point; times beyond an absorbing run's stored
// prefix resolve to the last stored state.
const LocalState& local_of(const RunSet& rs, Point p, std::size_t agent);
const LocalState& local_of(const RunSet& rs, Point p, const std::string& agent);

const GlobalState& global_of(const RunSet& rs, Point p);

// True iff the agent has the same local state at both points.
bool indistinguishable(const RunSet& rs, Point a, Point b, std::size_t agent);
bool indistinguishable(const RunSet& rs, Point a, Point b, const std::string& agent);

// Subset of `points` the agent cannot tell apart from p; preserves the order
// of `points` and always contains p when present.
std::vector<Point> points_indistinguishable_from(const RunSet& rs, Point p,
                                                 const std::string& agent,
                                                 const std::vector<Point>& points);

// Every stored point in canonical order: run index, then time.
std::vector<Point> all_points(const RunSet& rs);

// Clamps a stuttered time into the stored prefix of an absorbing run; throws
// for times beyond a non-absorbing run or past the horizon.
Point normalize_point(const RunSet& rs, Point p);

struct LocalStateHash {
  std::size_t operator()(const LocalState& l) const;
};
struct GlobalStateHash {
  std::size_t operator()(const GlobalState& g) const;
};

const char* to_string(AgentKind kind);
AgentKind agent_kind_from_string(const std::string& s);  // throws ModelError

}  // namespace epimc
