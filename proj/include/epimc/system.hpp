#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "epimc/formula.hpp"
#include "epimc/state.hpp"

namespace epimc {

inline constexpr const char* kNopAction = "nop";

// A declarative multi-agent system: agents with finite-domain local states,
// per-agent protocols, an optional joint-action whitelist, and an explicit
// deterministic transition table. Self-edges in the table declare that the
// joint action has no effect at that state.
struct SystemModel {
  std::string name;
  std::vector<AgentDecl> agents;                       // canonical order, environment first
  std::vector<std::vector<std::string>> actions;       // per-agent alphabets; each contains "nop"
  std::vector<std::unordered_map<LocalState, std::vector<std::uint16_t>, LocalStateHash>>
      protocols;                                       // local state -> sorted action indices
  std::optional<std::vector<JointAction>> allowed_joint_actions;
  std::unordered_map<GlobalState, std::map<JointAction, GlobalState>, GlobalStateHash>
      transitions;
  GlobalState initial;
  std::vector<std::string> state_order;                // declaration order of state names
  std::unordered_map<GlobalState, std::string, GlobalStateHash> state_names;
  std::vector<Proposition> propositions;
  std::size_t human_agent = 0;                         // index of the (single) human agent

  std::size_t agent_index(const std::string& name) const;        // throws ModelError
  std::uint16_t action_index(std::size_t agent, const std::string& name) const;
  std::uint16_t nop_index(std::size_t agent) const;
  std::size_t prop_index(const std::string& name) const;         // throws ModelError

  const std::string& state_name(const GlobalState& g) const;     // throws ModelError

  // "(empty, sys.ready.no)" style rendering of value tuples.
  std::string render_local(const LocalState& l) const;
  std::string render_global(const GlobalState& g) const;         // parts joined by " | "
  std::string render_action(const JointAction& ja) const;
};

// Joint actions available at g: the cross product of the per-agent protocol
// entries, filtered by the whitelist when one is declared. Canonical order is
// lexicographic on action indices.
std::vector<JointAction> enabled_joint_actions(const SystemModel& model, const GlobalState& g);

// tau(g, ja). The action must be enabled and present in the transition table;
// a self-edge encodes "no effect".
const GlobalState& step(const SystemModel& model, const GlobalState& g, const JointAction& ja);

// Enumerates every run of length <= horizon: maximal tau-paths from the
// initial state, closed early at absorbing states, with trailing self-loop
// transitions trimmed so no two runs differ only by stutter. Runs are
// identified by their state sequences and ordered by the lexicographically
// least joint-action sequence that realizes them.
RunSet enumerate_runs(const SystemModel& model, std::uint32_t horizon,
                      std::size_t point_cap = 1'000'000);

// Distinct states visited by the run set, in state declaration order.
// Throws if a reachable state was never declared.
std::vector<GlobalState> reachable_states(const SystemModel& model, const RunSet& rs);

// Declared states the run set never visits (reported as warnings upstream).
std::vector<std::string> unreachable_declared_states(const SystemModel& model, const RunSet& rs);

}  // namespace epimc
