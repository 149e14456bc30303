#include "epimc/dot.hpp"

#include <set>
#include <sstream>

#include "epimc/errors.hpp"

namespace epimc {

namespace {

// Propositional evaluation directly at a state; the bad condition is
// epistemic-free by construction.
bool eval_at_state(const Interpretation& pi, const GlobalState& g, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Prop: return pi.value(f.prop_name(), g);
    case FormulaKind::Not: return !eval_at_state(pi, g, f.child());
    case FormulaKind::And:
      return eval_at_state(pi, g, f.left()) && eval_at_state(pi, g, f.right());
    default:
      throw EvalError("epistemic operator in a state-level formula");
  }
}

}  // namespace

std::string export_dot(const LoadedModel& lm, const RunSet& rs) {
  const SystemModel& model = lm.model;
  const std::vector<GlobalState> reachable = reachable_states(model, rs);
  std::set<GlobalState> in_graph(reachable.begin(), reachable.end());

  std::ostringstream out;
  out << "digraph \"" << model.name << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box];\n";
  for (const GlobalState& g : reachable) {
    const std::string& name = model.state_name(g);
    out << "  \"" << name << "\" [label=\"" << name << "\\n" << model.render_global(g) << "\"";
    if (eval_at_state(lm.pi, g, lm.bad.formula)) out << ", style=filled, fillcolor=gray80";
    if (g == model.initial) out << ", penwidth=2";
    out << "];\n";
  }
  for (const GlobalState& g : reachable) {
    auto it = model.transitions.find(g);
    if (it == model.transitions.end()) continue;
    for (const auto& [ja, to] : it->second) {
      if (to == g) continue;  // figure convention: no self-loops
      if (!in_graph.contains(to)) continue;
      out << "  \"" << model.state_name(g) << "\" -> \"" << model.state_name(to)
          << "\" [label=\"" << model.render_action(ja) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace epimc
