#include "epimc/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "epimc/errors.hpp"

namespace epimc {

using Json = nlohmann::ordered_json;

namespace {

bool ident_ok(const std::string& s) {
  if (s.empty()) return false;
  auto start = [](char c) { return (c >= 'a' && c <= 'z') || c == '_'; };
  auto cont = [&](char c) {
    return start(c) || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.';
  };
  if (!start(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), cont);
}

const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw ModelError("missing required key '" + key + "'", path);
  return j.at(key);
}

std::string require_string(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = require(j, key, path);
  if (!v.is_string()) throw ModelError("expected a string", path + "/" + key);
  return v.get<std::string>();
}

// Resolves one agent's JSON assignment {"var": "value", ...} to a LocalState.
LocalState parse_local(const Json& j, const SystemModel& model, std::size_t agent,
                       const std::string& path) {
  const AgentDecl& decl = model.agents[agent];
  if (!j.is_object()) throw ModelError("expected an object of variable assignments", path);
  LocalState l;
  l.agent = static_cast<std::uint32_t>(agent);
  l.values.resize(decl.variables.size());
  std::size_t assigned = 0;
  for (const auto& [var, value] : j.items()) {
    bool found = false;
    for (std::size_t v = 0; v < decl.variables.size(); ++v) {
      if (decl.variables[v].name != var) continue;
      found = true;
      if (!value.is_string())
        throw ModelError("expected a value symbol", path + "/" + var);
      const auto& domain = decl.variables[v].domain;
      auto it = std::find(domain.begin(), domain.end(), value.get<std::string>());
      if (it == domain.end())
        throw ModelError("value '" + value.get<std::string>() + "' is not in the domain of '" +
                         var + "'", path + "/" + var);
      l.values[v] = static_cast<std::uint16_t>(it - domain.begin());
      ++assigned;
      break;
    }
    if (!found)
      throw ModelError("agent '" + decl.name + "' declares no variable '" + var + "'",
                       path + "/" + var);
  }
  if (assigned != decl.variables.size())
    throw ModelError("assignment must cover every variable of agent '" + decl.name + "'", path);
  return l;
}

JointAction parse_joint_action(const Json& j, const SystemModel& model, const std::string& path) {
  if (!j.is_object()) throw ModelError("expected an object mapping agents to actions", path);
  JointAction ja;
  ja.actions.resize(model.agents.size());
  std::size_t assigned = 0;
  for (const auto& [agent, action] : j.items()) {
    const std::size_t idx = [&] {
      try {
        return model.agent_index(agent);
      } catch (const ModelError&) {
        throw ModelError("unknown agent '" + agent + "'", path);
      }
    }();
    if (!action.is_string()) throw ModelError("expected an action name", path + "/" + agent);
    try {
      ja.actions[idx] = model.action_index(idx, action.get<std::string>());
    } catch (const ModelError& e) {
      throw ModelError(e.what(), path + "/" + agent);
    }
    ++assigned;
  }
  if (assigned != model.agents.size())
    throw ModelError("joint action must assign an action to every agent", path);
  return ja;
}

void check_formula_refs(const Formula& f, const SystemModel& model, const std::string& path) {
  switch (f.kind()) {
    case FormulaKind::Prop:
      try {
        model.prop_index(f.prop_name());
      } catch (const ModelError& e) {
        throw ModelError(e.what(), path);
      }
      return;
    case FormulaKind::Not:
    case FormulaKind::BKnows:
      check_formula_refs(f.child(), model, path);
      return;
    case FormulaKind::Knows:
      try {
        model.agent_index(f.agent());
      } catch (const ModelError& e) {
        throw ModelError(e.what(), path);
      }
      check_formula_refs(f.child(), model, path);
      return;
    case FormulaKind::And:
      check_formula_refs(f.left(), model, path);
      check_formula_refs(f.right(), model, path);
      return;
  }
}

Literal parse_literal_checked(const std::string& text, const SystemModel& model,
                              const std::string& path) {
  Literal l;
  try {
    l = parse_literal(text);
  } catch (const ParseError& e) {
    throw ModelError(std::string("bad literal '") + text + "': " + e.what(), path);
  }
  try {
    model.prop_index(l.prop);
  } catch (const ModelError& e) {
    throw ModelError(e.what(), path);
  }
  return l;
}

}  // namespace

const EpistemicSetup& LoadedModel::setup(const std::string& name) const {
  for (const EpistemicSetup& s : setups)
    if (s.name == name) return s;
  throw ModelError("model declares no setup named '" + name + "'");
}

bool LoadedModel::has_setup(const std::string& name) const {
  return std::any_of(setups.begin(), setups.end(),
                     [&](const EpistemicSetup& s) { return s.name == name; });
}

LoadedModel load_model_from_string(const std::string& text, const std::string& origin) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ModelError(std::string("not valid JSON: ") + e.what(), origin);
  }
  if (!doc.is_object()) throw ModelError("model document must be a JSON object", "/");

  const Json& version = require(doc, "schema_version", "/");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
    throw ModelError("unsupported schema_version (expected " +
                     std::to_string(kSchemaVersion) + ")", "/schema_version");

  LoadedModel lm;
  SystemModel& model = lm.model;
  model.name = require_string(doc, "name", "/");
  if (doc.contains("description")) lm.description = require_string(doc, "description", "/");
  if (doc.contains("default_horizon")) {
    const Json& h = doc.at("default_horizon");
    if (!h.is_number_integer() || h.get<int>() <= 0)
      throw ModelError("default_horizon must be a positive integer", "/default_horizon");
    lm.default_horizon = h.get<std::uint32_t>();
  }

  // agents, reordered so the environment (if any) comes first
  const Json& agents = require(doc, "agents", "/");
  if (!agents.is_array() || agents.empty())
    throw ModelError("at least one agent is required", "/agents");
  std::vector<std::pair<AgentDecl, std::vector<std::string>>> declared;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string path = "/agents/" + std::to_string(i);
    const Json& a = agents.at(i);
    AgentDecl decl;
    decl.name = require_string(a, "name", path);
    if (!ident_ok(decl.name)) throw ModelError("agent name is not an identifier", path + "/name");
    decl.kind = agent_kind_from_string(require_string(a, "kind", path));
    const Json& vars = require(a, "variables", path);
    if (!vars.is_array()) throw ModelError("expected an array", path + "/variables");
    std::set<std::string> var_names;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      const std::string vpath = path + "/variables/" + std::to_string(v);
      VariableDecl var;
      var.name = require_string(vars.at(v), "name", vpath);
      if (!var_names.insert(var.name).second)
        throw ModelError("duplicate variable '" + var.name + "'", vpath);
      const Json& domain = require(vars.at(v), "domain", vpath);
      if (!domain.is_array() || domain.empty())
        throw ModelError("domain must be a nonempty array of value symbols", vpath + "/domain");
      std::set<std::string> values;
      for (const Json& d : domain) {
        if (!d.is_string()) throw ModelError("value symbols must be strings", vpath + "/domain");
        if (!values.insert(d.get<std::string>()).second)
          throw ModelError("duplicate value '" + d.get<std::string>() + "'", vpath + "/domain");
        var.domain.push_back(d.get<std::string>());
      }
      decl.variables.push_back(std::move(var));
    }
    const Json& acts = require(a, "actions", path);
    if (!acts.is_array() || acts.empty())
      throw ModelError("expected a nonempty action alphabet", path + "/actions");
    std::vector<std::string> alphabet;
    std::set<std::string> seen_actions;
    for (const Json& act : acts) {
      if (!act.is_string()) throw ModelError("action names must be strings", path + "/actions");
      if (!seen_actions.insert(act.get<std::string>()).second)
        throw ModelError("duplicate action '" + act.get<std::string>() + "'", path + "/actions");
      alphabet.push_back(act.get<std::string>());
    }
    if (!seen_actions.contains(kNopAction))
      throw ModelError("every action alphabet must include 'nop'", path + "/actions");
    declared.emplace_back(std::move(decl), std::move(alphabet));
  }
  std::stable_sort(declared.begin(), declared.end(), [](const auto& a, const auto& b) {
    return (a.first.kind == AgentKind::Environment) > (b.first.kind == AgentKind::Environment);
  });
  std::set<std::string> agent_names;
  std::size_t env_count = 0;
  std::size_t human_count = 0;
  for (auto& [decl, alphabet] : declared) {
    if (!agent_names.insert(decl.name).second)
      throw ModelError("duplicate agent name '" + decl.name + "'", "/agents");
    env_count += decl.kind == AgentKind::Environment;
    if (decl.kind == AgentKind::Human) {
      ++human_count;
      model.human_agent = model.agents.size();
    }
    model.agents.push_back(std::move(decl));
    model.actions.push_back(std::move(alphabet));
  }
  if (env_count > 1) throw ModelError("at most one environment agent is allowed", "/agents");
  if (human_count != 1) throw ModelError("exactly one human agent is required", "/agents");
  model.protocols.resize(model.agents.size());

  // propositions
  const Json& props = require(doc, "propositions", "/");
  if (!props.is_array()) throw ModelError("expected an array", "/propositions");
  std::set<std::string> prop_names;
  for (std::size_t i = 0; i < props.size(); ++i) {
    const std::string path = "/propositions/" + std::to_string(i);
    Proposition p;
    p.name = require_string(props.at(i), "name", path);
    if (!ident_ok(p.name)) throw ModelError("proposition name is not an identifier", path + "/name");
    if (!prop_names.insert(p.name).second)
      throw ModelError("duplicate proposition '" + p.name + "'", path + "/name");
    if (props.at(i).contains("gloss")) p.gloss = require_string(props.at(i), "gloss", path);
    model.propositions.push_back(std::move(p));
  }

  // states
  const Json& states = require(doc, "states", "/");
  if (!states.is_object() || states.empty())
    throw ModelError("expected an object of named states", "/states");
  for (const auto& [name, assignment] : states.items()) {
    const std::string path = "/states/" + name;
    GlobalState g;
    for (std::size_t a = 0; a < model.agents.size(); ++a) {
      const Json& part = require(assignment, model.agents[a].name, path);
      g.parts.push_back(parse_local(part, model, a, path + "/" + model.agents[a].name));
    }
    if (assignment.size() != model.agents.size())
      throw ModelError("state must assign exactly the declared agents", path);
    if (model.state_names.contains(g))
      throw ModelError("state duplicates '" + model.state_names.at(g) + "'", path);
    model.state_order.push_back(name);
    model.state_names.emplace(std::move(g), name);
  }
  auto state_by_name = [&](const std::string& name, const std::string& path) -> const GlobalState& {
    for (const auto& [g, n] : model.state_names)
      if (n == name) return g;
    throw ModelError("unknown state '" + name + "'", path);
  };

  model.initial = state_by_name(require_string(doc, "initial_state", "/"), "/initial_state");

  // interpretation: fully explicit over declared states x propositions
  lm.pi = Interpretation([&] {
    std::vector<std::string> names;
    for (const Proposition& p : model.propositions) names.push_back(p.name);
    return names;
  }());
  const Json& interp = require(doc, "interpretation", "/");
  if (!interp.is_object()) throw ModelError("expected an object keyed by state name", "/interpretation");
  for (const std::string& sname : model.state_order) {
    const std::string path = "/interpretation/" + sname;
    const Json& row = require(interp, sname, "/interpretation");
    const GlobalState& g = state_by_name(sname, path);
    for (std::size_t p = 0; p < model.propositions.size(); ++p) {
      const Json& cell = require(row, model.propositions[p].name, path);
      if (!cell.is_boolean())
        throw ModelError("expected a boolean", path + "/" + model.propositions[p].name);
      lm.pi.set(g, p, cell.get<bool>());
    }
    if (row.size() != model.propositions.size())
      throw ModelError("interpretation row must map exactly the declared propositions", path);
  }
  for (const auto& [sname, row] : interp.items())
    state_by_name(sname, "/interpretation/" + sname);

  // protocols
  const Json& protocols = require(doc, "protocols", "/");
  for (std::size_t a = 0; a < model.agents.size(); ++a) {
    const std::string& aname = model.agents[a].name;
    const std::string path = "/protocols/" + aname;
    const Json& entries = require(protocols, aname, "/protocols");
    if (!entries.is_array()) throw ModelError("expected an array of protocol entries", path);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string epath = path + "/" + std::to_string(i);
      const Json& entry = entries.at(i);
      LocalState l = parse_local(require(entry, "state", epath), model, a, epath + "/state");
      const Json& acts = require(entry, "actions", epath);
      if (!acts.is_array() || acts.empty())
        throw ModelError("protocol entries need a nonempty action set", epath + "/actions");
      std::vector<std::uint16_t> indices;
      for (const Json& act : acts) {
        if (!act.is_string()) throw ModelError("action names must be strings", epath + "/actions");
        try {
          indices.push_back(model.action_index(a, act.get<std::string>()));
        } catch (const ModelError& e) {
          throw ModelError(e.what(), epath + "/actions");
        }
      }
      std::sort(indices.begin(), indices.end());
      indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
      if (!model.protocols[a].emplace(std::move(l), std::move(indices)).second)
        throw ModelError("duplicate protocol entry for one local state", epath + "/state");
    }
  }

  // optional joint-action whitelist
  if (doc.contains("joint_actions")) {
    const Json& wl = doc.at("joint_actions");
    if (!wl.is_array()) throw ModelError("expected an array", "/joint_actions");
    std::vector<JointAction> allowed;
    for (std::size_t i = 0; i < wl.size(); ++i)
      allowed.push_back(parse_joint_action(wl.at(i), model, "/joint_actions/" + std::to_string(i)));
    std::sort(allowed.begin(), allowed.end());
    allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
    model.allowed_joint_actions = std::move(allowed);
  }

  // transitions
  const Json& transitions = require(doc, "transitions", "/");
  if (!transitions.is_array()) throw ModelError("expected an array of edges", "/transitions");
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const std::string path = "/transitions/" + std::to_string(i);
    const Json& edge = transitions.at(i);
    const GlobalState& from = state_by_name(require_string(edge, "from", path), path + "/from");
    const GlobalState& to = state_by_name(require_string(edge, "to", path), path + "/to");
    JointAction ja = parse_joint_action(require(edge, "action", path), model, path + "/action");
    for (std::size_t a = 0; a < model.agents.size(); ++a) {
      auto it = model.protocols[a].find(from.parts[a]);
      if (it == model.protocols[a].end() ||
          !std::binary_search(it->second.begin(), it->second.end(), ja.actions[a]))
        throw ModelError("action '" + model.actions[a][ja.actions[a]] + "' is not allowed by '" +
                         model.agents[a].name + "''s protocol at the source state",
                         path + "/action");
    }
    if (model.allowed_joint_actions) {
      const auto& wl = *model.allowed_joint_actions;
      if (std::find(wl.begin(), wl.end(), ja) == wl.end())
        throw ModelError("joint action is not in the declared joint-action list", path + "/action");
    }
    auto& row = model.transitions[from];
    if (!row.emplace(std::move(ja), to).second)
      throw ModelError("duplicate transition for one (state, joint action) pair", path);
  }

  // bad-state condition
  lm.bad_text = require_string(doc, "bad", "/");
  try {
    lm.bad.formula = parse_formula(lm.bad_text);
  } catch (const ParseError& e) {
    throw ModelError(std::string("bad-state formula does not parse: ") + e.what(), "/bad");
  }
  if (lm.bad.formula.contains_epistemic())
    throw ModelError("bad-state formula must not contain epistemic operators", "/bad");
  check_formula_refs(lm.bad.formula, model, "/bad");

  // setups
  std::set<std::string> used_props;
  auto mark_used = [&](const Formula& f) {
    for (const Formula& sub : subformulas(f))
      if (sub.kind() == FormulaKind::Prop) used_props.insert(sub.prop_name());
  };
  mark_used(lm.bad.formula);
  if (doc.contains("setups")) {
    const Json& setups = doc.at("setups");
    if (!setups.is_object()) throw ModelError("expected an object of named setups", "/setups");
    for (const auto& [sname, body] : setups.items()) {
      const std::string path = "/setups/" + sname;
      EpistemicSetup setup;
      setup.name = sname;
      for (const Proposition& p : model.propositions) setup.phi.push_back(p.name);

      const Json& expl = require(body, "explicit", path);
      if (!expl.is_array()) throw ModelError("expected an array", path + "/explicit");
      for (std::size_t i = 0; i < expl.size(); ++i) {
        const std::string epath = path + "/explicit/" + std::to_string(i);
        LocalState l = parse_local(require(expl.at(i), "state", epath), model,
                                   model.human_agent, epath + "/state");
        const Json& knows = require(expl.at(i), "knows", epath);
        if (!knows.is_array()) throw ModelError("expected an array of literals", epath + "/knows");
        std::vector<Literal> lits;
        std::set<Literal> seen;
        for (const Json& lj : knows) {
          if (!lj.is_string()) throw ModelError("literals must be strings", epath + "/knows");
          Literal lit = parse_literal_checked(lj.get<std::string>(), model, epath + "/knows");
          if (seen.contains(Literal{lit.prop, !lit.negated}))
            throw ModelError("explicit knowledge contains both '" + lit.prop + "' and its negation",
                             epath + "/knows");
          if (seen.insert(lit).second) {
            used_props.insert(lit.prop);
            lits.push_back(std::move(lit));
          }
        }
        if (!setup.explicit_knowledge.table.emplace(std::move(l), std::move(lits)).second)
          throw ModelError("duplicate explicit entry for one local state", epath + "/state");
      }

      if (body.contains("automatic")) {
        const Json& automatic = body.at("automatic");
        if (automatic.contains("fixpoint")) {
          if (!automatic.at("fixpoint").is_boolean())
            throw ModelError("expected a boolean", path + "/automatic/fixpoint");
          setup.automatic.fixpoint = automatic.at("fixpoint").get<bool>();
        }
        const Json& rules = require(automatic, "rules", path + "/automatic");
        if (!rules.is_array()) throw ModelError("expected an array", path + "/automatic/rules");
        for (std::size_t i = 0; i < rules.size(); ++i) {
          const std::string rpath = path + "/automatic/rules/" + std::to_string(i);
          AutomaticRule rule;
          const Json& antecedents = require(rules.at(i), "if", rpath);
          if (!antecedents.is_array() || antecedents.empty())
            throw ModelError("rule antecedents must be a nonempty array", rpath + "/if");
          for (const Json& a : antecedents) {
            if (!a.is_string()) throw ModelError("literals must be strings", rpath + "/if");
            rule.antecedents.push_back(
                parse_literal_checked(a.get<std::string>(), model, rpath + "/if"));
            used_props.insert(rule.antecedents.back().prop);
          }
          rule.conclusion =
              parse_literal_checked(require_string(rules.at(i), "then", rpath), model, rpath + "/then");
          used_props.insert(rule.conclusion.prop);
          setup.automatic.rules.push_back(std::move(rule));
        }
      }

      if (body.contains("deductions")) {
        const Json& deductions = body.at("deductions");
        if (!deductions.is_array()) throw ModelError("expected an array", path + "/deductions");
        for (std::size_t i = 0; i < deductions.size(); ++i) {
          const std::string dpath = path + "/deductions/" + std::to_string(i);
          if (!deductions.at(i).is_string())
            throw ModelError("deductions must be formula strings", dpath);
          Implication impl;
          try {
            impl = parse_implication(deductions.at(i).get<std::string>());
          } catch (const ParseError& e) {
            throw ModelError(std::string("deduction does not parse: ") + e.what(), dpath);
          }
          for (const Literal& a : impl.antecedents) {
            parse_literal_checked(a.text(), model, dpath);
            used_props.insert(a.prop);
          }
          check_formula_refs(impl.conclusion, model, dpath);
          mark_used(impl.conclusion);
          setup.deductions.items.push_back(std::move(impl));
        }
      }
      lm.setups.push_back(std::move(setup));
    }
  }

  for (const Proposition& p : model.propositions)
    if (!used_props.contains(p.name))
      lm.warnings.push_back("proposition '" + p.name +
                            "' is not used by the bad-state condition or any setup");
  return lm;
}

LoadedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_model_from_string(buffer.str(), path.string());
}

std::vector<std::string> validate_reachability(const LoadedModel& lm, const RunSet& rs) {
  // Throws via state_name when a reachable state is undeclared.
  (void)reachable_states(lm.model, rs);
  std::vector<std::string> warnings;
  for (const std::string& name : unreachable_declared_states(lm.model, rs))
    warnings.push_back("declared state '" + name + "' is unreachable");
  return warnings;
}

namespace {

Json local_to_json(const SystemModel& model, const LocalState& l) {
  Json out = Json::object();
  const AgentDecl& decl = model.agents[l.agent];
  for (std::size_t v = 0; v < decl.variables.size(); ++v)
    out[decl.variables[v].name] = decl.variables[v].domain[l.values[v]];
  return out;
}

Json joint_action_to_json(const SystemModel& model, const JointAction& ja) {
  Json out = Json::object();
  for (std::size_t a = 0; a < model.agents.size(); ++a)
    out[model.agents[a].name] = model.actions[a][ja.actions[a]];
  return out;
}

}  // namespace

std::string save_model(const LoadedModel& lm) {
  const SystemModel& model = lm.model;
  Json doc = Json::object();
  doc["schema_version"] = kSchemaVersion;
  doc["name"] = model.name;
  if (!lm.description.empty()) doc["description"] = lm.description;
  doc["default_horizon"] = lm.default_horizon;

  doc["agents"] = Json::array();
  for (std::size_t a = 0; a < model.agents.size(); ++a) {
    const AgentDecl& decl = model.agents[a];
    Json agent = Json::object();
    agent["name"] = decl.name;
    agent["kind"] = to_string(decl.kind);
    agent["variables"] = Json::array();
    for (const VariableDecl& var : decl.variables)
      agent["variables"].push_back({{"name", var.name}, {"domain", var.domain}});
    agent["actions"] = model.actions[a];
    doc["agents"].push_back(std::move(agent));
  }

  std::unordered_map<std::string, const GlobalState*> by_name;
  for (const auto& [g, name] : model.state_names) by_name.emplace(name, &g);

  doc["states"] = Json::object();
  for (const std::string& name : model.state_order) {
    const GlobalState& g = *by_name.at(name);
    Json s = Json::object();
    for (std::size_t a = 0; a < model.agents.size(); ++a)
      s[model.agents[a].name] = local_to_json(model, g.parts[a]);
    doc["states"][name] = std::move(s);
  }
  doc["initial_state"] = model.state_names.at(model.initial);

  doc["propositions"] = Json::array();
  for (const Proposition& p : model.propositions) {
    Json prop = Json::object();
    prop["name"] = p.name;
    if (!p.gloss.empty()) prop["gloss"] = p.gloss;
    doc["propositions"].push_back(std::move(prop));
  }

  doc["interpretation"] = Json::object();
  for (const std::string& name : model.state_order) {
    const GlobalState& g = *by_name.at(name);
    Json row = Json::object();
    for (std::size_t p = 0; p < model.propositions.size(); ++p)
      row[model.propositions[p].name] = lm.pi.value(p, g);
    doc["interpretation"][name] = std::move(row);
  }

  doc["protocols"] = Json::object();
  for (std::size_t a = 0; a < model.agents.size(); ++a) {
    std::vector<std::pair<LocalState, std::vector<std::uint16_t>>> entries(
        model.protocols[a].begin(), model.protocols[a].end());
    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    Json list = Json::array();
    for (const auto& [l, acts] : entries) {
      Json entry = Json::object();
      entry["state"] = local_to_json(model, l);
      Json names = Json::array();
      for (std::uint16_t act : acts) names.push_back(model.actions[a][act]);
      entry["actions"] = std::move(names);
      list.push_back(std::move(entry));
    }
    doc["protocols"][model.agents[a].name] = std::move(list);
  }

  if (model.allowed_joint_actions) {
    doc["joint_actions"] = Json::array();
    for (const JointAction& ja : *model.allowed_joint_actions)
      doc["joint_actions"].push_back(joint_action_to_json(model, ja));
  }

  // edges ordered by source declaration, then joint action
  doc["transitions"] = Json::array();
  for (const std::string& name : model.state_order) {
    auto it = model.transitions.find(*by_name.at(name));
    if (it == model.transitions.end()) continue;
    for (const auto& [ja, to] : it->second) {
      Json edge = Json::object();
      edge["from"] = name;
      edge["action"] = joint_action_to_json(model, ja);
      edge["to"] = model.state_names.at(to);
      doc["transitions"].push_back(std::move(edge));
    }
  }

  doc["bad"] = lm.bad_text;

  if (!lm.setups.empty()) {
    doc["setups"] = Json::object();
    for (const EpistemicSetup& setup : lm.setups) {
      Json body = Json::object();
      std::vector<std::pair<LocalState, std::vector<Literal>>> entries(
          setup.explicit_knowledge.table.begin(), setup.explicit_knowledge.table.end());
      std::sort(entries.begin(), entries.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      body["explicit"] = Json::array();
      for (const auto& [l, lits] : entries) {
        Json entry = Json::object();
        entry["state"] = local_to_json(model, l);
        Json knows = Json::array();
        for (const Literal& lit : lits) knows.push_back(lit.text());
        entry["knows"] = std::move(knows);
        body["explicit"].push_back(std::move(entry));
      }
      if (!setup.automatic.rules.empty() || setup.automatic.fixpoint) {
        Json automatic = Json::object();
        if (setup.automatic.fixpoint) automatic["fixpoint"] = true;
        automatic["rules"] = Json::array();
        for (const AutomaticRule& rule : setup.automatic.rules) {
          Json r = Json::object();
          Json antecedents = Json::array();
          for (const Literal& a : rule.antecedents) antecedents.push_back(a.text());
          r["if"] = std::move(antecedents);
          r["then"] = rule.conclusion.text();
          automatic["rules"].push_back(std::move(r));
        }
        body["automatic"] = std::move(automatic);
      }
      if (!setup.deductions.items.empty()) {
        Json deductions = Json::array();
        for (const Implication& impl : setup.deductions.items) deductions.push_back(impl.text());
        body["deductions"] = std::move(deductions);
      }
      doc["setups"][setup.name] = std::move(body);
    }
  }

  return doc.dump(2) + "\n";
}

}  // namespace epimc
