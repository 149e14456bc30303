#include "epimc/system.hpp"

#include <algorithm>
#include <set>

#include "epimc/errors.hpp"

namespace epimc {

std::size_t SystemModel::agent_index(const std::string& name) const {
  for (std::size_t i = 0; i < agents.size(); ++i)
    if (agents[i].name == name) return i;
  throw ModelError("unknown agent '" + name + "'");
}

std::uint16_t SystemModel::action_index(std::size_t agent, const std::string& name) const {
  const auto& alphabet = actions.at(agent);
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == name)
      return static_cast<std::uint16_t>(i);
  throw ModelError("unknown action '" + name + "' for agent '" + agents[agent].name + "'");
}

std::uint16_t SystemModel::nop_index(std::size_t agent) const {
  return action_index(agent, kNopAction);
}

std::size_t SystemModel::prop_index(const std::string& name) const {
  for (std::size_t i = 0; i < propositions.size(); ++i)
    if (propositions[i].name == name) return i;
  throw ModelError("unknown proposition '" + name + "'");
}

const std::string& SystemModel::state_name(const GlobalState& g) const {
  auto it = state_names.find(g);
  if (it == state_names.end())
    throw ModelError("reachable state " + render_global(g) + " is not declared");
  return it->second;
}

std::string SystemModel::render_local(const LocalState& l) const {
  const AgentDecl& decl = agents.at(l.agent);
  std::string out = "(";
  for (std::size_t i = 0; i < l.values.size(); ++i) {
    if (i > 0) out += ", ";
    out += decl.variables[i].domain.at(l.values[i]);
  }
  out += ")";
  return out;
}

std::string SystemModel::render_global(const GlobalState& g) const {
  std::string out = "(";
  for (std::size_t i = 0; i < g.parts.size(); ++i) {
    if (i > 0) out += " | ";
    const AgentDecl& decl = agents[i];
    for (std::size_t v = 0; v < g.parts[i].values.size(); ++v) {
      if (v > 0) out += ", ";
      out += decl.variables[v].domain.at(g.parts[i].values[v]);
    }
    if (g.parts[i].values.empty()) out += "-";
  }
  out += ")";
  return out;
}

std::string SystemModel::render_action(const JointAction& ja) const {
  std::string out = "(";
  for (std::size_t i = 0; i < ja.actions.size(); ++i) {
    if (i > 0) out += ", ";
    out += actions[i].at(ja.actions[i]);
  }
  out += ")";
  return out;
}

std::vector<JointAction> enabled_joint_actions(const SystemModel& model, const GlobalState& g) {
  const std::size_t n = model.agents.size();
  std::vector<const std::vector<std::uint16_t>*> choices(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = model.protocols[i].find(g.parts[i]);
    if (it == model.protocols[i].end())
      throw ModelError("protocol gap: agent '" + model.agents[i].name +
                       "' has no entry for local state " + model.render_local(g.parts[i]));
    choices[i] = &it->second;
  }
  std::vector<JointAction> out;
  JointAction cur;
  cur.actions.resize(n);
  auto emit = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (std::uint16_t a : *choices[i]) {
      cur.actions[i] = a;
      self(self, i + 1);
    }
  };
  emit(emit, 0);
  if (model.allowed_joint_actions) {
    const auto& wl = *model.allowed_joint_actions;
    std::erase_if(out, [&](const JointAction& ja) {
      return std::find(wl.begin(), wl.end(), ja) == wl.end();
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

const GlobalState& step(const SystemModel& model, const GlobalState& g, const JointAction& ja) {
  auto it = model.transitions.find(g);
  if (it != model.transitions.end()) {
    auto jt = it->second.find(ja);
    if (jt != it->second.end()) return jt->second;
  }
  throw ModelError("transition table has no entry for state " + model.render_global(g) +
                   " under joint action " + model.render_action(ja) +
                   " (add an edge, or a self-edge for a no-effect pair)");
}

namespace {

struct RunKey {
  std::vector<GlobalState> states;
  bool operator<(const RunKey& other) const { return states < other.states; }
};

}  // namespace

RunSet enumerate_runs(const SystemModel& model, std::uint32_t horizon, std::size_t point_cap) {
  RunSet rs;
  rs.horizon = horizon;
  for (const AgentDecl& a : model.agents) rs.agents.push_back(a.name);

  // state -> enabled actions, resolved once
  std::unordered_map<GlobalState, std::vector<JointAction>, GlobalStateHash> enabled_cache;
  auto enabled_of = [&](const GlobalState& g) -> const std::vector<JointAction>& {
    auto it = enabled_cache.find(g);
    if (it == enabled_cache.end())
      it = enabled_cache.emplace(g, enabled_joint_actions(model, g)).first;
    return it->second;
  };
  auto is_self_loop = [&](const GlobalState& g, const JointAction& ja) {
    return step(model, g, ja) == g;
  };
  auto absorbing_state = [&](const GlobalState& g) {
    const auto& en = enabled_of(g);
    return !en.empty() && std::all_of(en.begin(), en.end(), [&](const JointAction& ja) {
      return is_self_loop(g, ja);
    });
  };
  auto can_stutter = [&](const GlobalState& g) {
    const auto& en = enabled_of(g);
    return std::any_of(en.begin(), en.end(), [&](const JointAction& ja) {
      return is_self_loop(g, ja);
    });
  };

  // Dedup by state sequence, keeping the lexicographically least action
  // sequence that realizes it.
  std::map<RunKey, std::vector<JointAction>> found;
  std::size_t stored_points = 0;

  std::vector<GlobalState> path{model.initial};
  std::vector<JointAction> acts;

  auto emit = [&]() {
    std::vector<GlobalState> states = path;
    std::vector<JointAction> actions = acts;
    while (!actions.empty() && states[states.size() - 2] == states.back()) {
      states.pop_back();
      actions.pop_back();
    }
    RunKey key{std::move(states)};
    auto it = found.find(key);
    if (it == found.end()) {
      stored_points += key.states.size();
      if (stored_points > point_cap)
        throw ModelError("state-space bound exceeded: more than " +
                         std::to_string(point_cap) + " points at horizon " +
                         std::to_string(horizon));
      found.emplace(std::move(key), std::move(actions));
    } else if (actions < it->second) {
      it->second = std::move(actions);
    }
  };

  auto dfs = [&](auto&& self) -> void {
    const GlobalState g = path.back();  // copy: push_back below reallocates
    if (absorbing_state(g) || acts.size() == horizon || enabled_of(g).empty()) {
      emit();
      return;
    }
    for (const JointAction& ja : enabled_of(g)) {
      path.push_back(step(model, g, ja));
      acts.push_back(ja);
      self(self);
      path.pop_back();
      acts.pop_back();
    }
  };
  dfs(dfs);

  std::vector<std::pair<std::vector<JointAction>, const RunKey*>> order;
  order.reserve(found.size());
  for (const auto& [key, actions] : found) order.emplace_back(actions, &key);
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  rs.runs.reserve(order.size());
  for (auto& [actions, key] : order) {
    Run run;
    run.states = key->states;
    run.actions = actions;
    run.absorbing = can_stutter(run.states.back());
    rs.runs.push_back(std::move(run));
  }
  return rs;
}

std::vector<GlobalState> reachable_states(const SystemModel& model, const RunSet& rs) {
  std::set<GlobalState> seen;
  for (const Run& run : rs.runs)
    for (const GlobalState& g : run.states) seen.insert(g);
  // order by declaration; undeclared reachable states are an error
  std::unordered_map<std::string, const GlobalState*> by_name;
  for (const GlobalState& g : seen) by_name.emplace(model.state_name(g), &g);
  std::vector<GlobalState> out;
  for (const std::string& name : model.state_order) {
    auto it = by_name.find(name);
    if (it != by_name.end()) out.push_back(*it->second);
  }
  return out;
}

std::vector<std::string> unreachable_declared_states(const SystemModel& model, const RunSet& rs) {
  std::set<GlobalState> seen;
  for (const Run& run : rs.runs)
    for (const GlobalState& g : run.states) seen.insert(g);
  std::vector<std::string> out;
  for (const std::string& name : model.state_order) {
    bool reachable = false;
    for (const GlobalState& g : seen)
      if (model.state_names.at(g) == name) { reachable = true; break; }
    if (!reachable) out.push_back(name);
  }
  return out;
}

}  // namespace epimc
