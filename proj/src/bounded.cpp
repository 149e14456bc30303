#include "epimc/bounded.hpp"

#include <algorithm>

#include "epimc/errors.hpp"

namespace epimc {

namespace {

bool antecedents_hold(const std::vector<Literal>& antecedents, const std::set<Literal>& t) {
  return std::all_of(antecedents.begin(), antecedents.end(),
                     [&](const Literal& l) { return t.contains(l); });
}

std::vector<std::string> find_contradictions(const std::set<Literal>& t) {
  std::vector<std::string> out;
  for (const Literal& l : t)
    if (!l.negated && t.contains(Literal{l.prop, true})) out.push_back(l.prop);
  return out;
}

std::set<Literal> one_round(const AutomaticRules& rules, const std::set<Literal>& t) {
  std::set<Literal> out = t;
  for (const AutomaticRule& rule : rules.rules)
    if (antecedents_hold(rule.antecedents, t)) out.insert(rule.conclusion);
  return out;
}

// Sort key for literal-derived knowledge: proposition order in phi, positive
// before negated. Unknown propositions sort after known ones, by name.
std::size_t phi_rank(const std::vector<std::string>& phi, const std::string& prop) {
  for (std::size_t i = 0; i < phi.size(); ++i)
    if (phi[i] == prop) return i;
  return phi.size();
}

}  // namespace

AutomaticResult apply_automatic(const AutomaticRules& rules, const std::set<Literal>& input) {
  AutomaticResult result;
  result.literals = one_round(rules, input);
  if (rules.fixpoint) {
    // Terminates: the set grows monotonically inside the finite Phi^c.
    while (true) {
      std::set<Literal> next = one_round(rules, result.literals);
      if (next == result.literals) break;
      result.literals = std::move(next);
    }
  }
  result.contradictions = find_contradictions(result.literals);
  return result;
}

std::vector<Formula> apply_deductions(const DeductionSet& deductions,
                                      const std::set<Literal>& input,
                                      const std::vector<std::string>& phi) {
  std::vector<Literal> lits(input.begin(), input.end());
  std::sort(lits.begin(), lits.end(), [&](const Literal& a, const Literal& b) {
    const std::size_t ra = phi_rank(phi, a.prop);
    const std::size_t rb = phi_rank(phi, b.prop);
    if (ra != rb) return ra < rb;
    if (a.prop != b.prop) return a.prop < b.prop;
    return a.negated < b.negated;
  });

  std::vector<Formula> out;
  std::set<std::string> seen;
  auto push = [&](Formula f) {
    if (seen.insert(f.text()).second) out.push_back(std::move(f));
  };
  for (const Literal& l : lits) push(Formula::bknows(l.to_formula()));
  for (const Implication& impl : deductions.items)
    if (antecedents_hold(impl.antecedents, input))
      push(Formula::bknows(impl.conclusion));
  return out;
}

std::vector<Formula> theta_apply(const EpistemicSetup& setup, const LocalState& l) {
  auto it = setup.explicit_knowledge.table.find(l);
  if (it == setup.explicit_knowledge.table.end())
    throw EvalError("setup '" + setup.name +
                    "' does not cover a reachable human local state");
  std::set<Literal> f(it->second.begin(), it->second.end());
  const AutomaticResult ground = apply_automatic(setup.automatic, f);
  return apply_deductions(setup.deductions, ground.literals, setup.phi);
}

EpistemicSystem::EpistemicSystem(const PointIndex& idx, const Interpretation& pi,
                                 EpistemicSetup setup, std::size_t human_agent)
    : idx_(&idx), pi_(&pi), setup_(std::move(setup)), human_(human_agent) {
  const RunSet& rs = idx_->runs();
  if (human_ >= rs.agents.size()) throw ModelError("human agent index out of range");
  for (const Run& run : rs.runs) {
    for (const GlobalState& g : run.states) {
      const LocalState& l = g.parts[human_];
      if (cache_.contains(l)) continue;
      auto it = setup_.explicit_knowledge.table.find(l);
      if (it == setup_.explicit_knowledge.table.end())
        throw ModelError("setup '" + setup_.name +
                         "' does not cover reachable human local state");
      Entry entry;
      std::set<Literal> f(it->second.begin(), it->second.end());
      AutomaticResult ground = apply_automatic(setup_.automatic, f);
      entry.ground = std::move(ground.literals);
      for (const std::string& prop : ground.contradictions)
        warnings_.push_back("setup '" + setup_.name + "': both '" + prop + "' and '!" +
                            prop + "' are known at a reachable local state");
      entry.ordered = apply_deductions(setup_.deductions, entry.ground, setup_.phi);
      for (const Formula& g2 : entry.ordered) entry.members.insert(g2.text());
      cache_.emplace(l, std::move(entry));
    }
  }
  std::sort(warnings_.begin(), warnings_.end());
  warnings_.erase(std::unique(warnings_.begin(), warnings_.end()), warnings_.end());
}

const EpistemicSystem::Entry& EpistemicSystem::entry(const LocalState& l) const {
  auto it = cache_.find(l);
  if (it == cache_.end())
    throw EvalError("setup '" + setup_.name +
                    "' has no sealed knowledge for the queried local state");
  return it->second;
}

const std::vector<Formula>& EpistemicSystem::theta(const LocalState& l) const {
  return entry(l).ordered;
}

bool EpistemicSystem::theta_contains(const LocalState& l, const Formula& f) const {
  return entry(l).members.contains(f.text());
}

const std::set<Literal>& EpistemicSystemAccess::ground(const EpistemicSystem& es,
                                                       const LocalState& l) {
  return es.entry(l).ground;
}

bool eval_es(const EpistemicSystem& es, Point p, const Formula& f) {
  const RunSet& rs = es.runs();
  switch (f.kind()) {
    case FormulaKind::Prop:
      return es.interpretation().value(f.prop_name(), global_of(rs, p));
    case FormulaKind::Not:
      return !eval_es(es, p, f.child());
    case FormulaKind::And:
      return eval_es(es, p, f.left()) && eval_es(es, p, f.right());
    case FormulaKind::Knows: {
      const std::size_t agent = rs.agent_index(f.agent());
      const LocalState& mine = local_of(rs, p, agent);
      for (std::uint32_t r = 0; r < rs.runs.size(); ++r)
        for (std::uint32_t m = 0; m < rs.runs[r].states.size(); ++m) {
          const Point q{r, m};
          if (local_of(rs, q, agent) == mine && !eval_es(es, q, f.child()))
            return false;
        }
      return true;
    }
    case FormulaKind::BKnows:
      // Syntactic membership, not semantic consequence.
      return es.theta_contains(local_of(rs, p, es.human_agent()), f);
  }
  throw EvalError("bad formula node");
}

std::vector<std::uint8_t> eval_es_all(const EpistemicSystem& es, const Formula& f) {
  const PointIndex& idx = es.index();
  const RunSet& rs = idx.runs();
  const std::vector<Formula> order = subformulas(f);
  std::unordered_map<Formula, std::size_t, FormulaHash> slot;
  for (std::size_t i = 0; i < order.size(); ++i) slot.emplace(order[i], i);

  std::vector<std::vector<std::uint8_t>> values(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Formula& g = order[i];
    std::vector<std::uint8_t> row(idx.size(), 0);
    switch (g.kind()) {
      case FormulaKind::Prop: {
        const std::size_t prop = es.interpretation().prop_index(g.prop_name());
        for (std::size_t k = 0; k < idx.size(); ++k)
          row[k] = es.interpretation().value(prop, global_of(rs, idx.points()[k])) ? 1 : 0;
        break;
      }
      case FormulaKind::Not: {
        const auto& child = values[slot.at(g.child())];
        for (std::size_t k = 0; k < idx.size(); ++k) row[k] = child[k] ? 0 : 1;
        break;
      }
      case FormulaKind::And: {
        const auto& lhs = values[slot.at(g.left())];
        const auto& rhs = values[slot.at(g.right())];
        for (std::size_t k = 0; k < idx.size(); ++k) row[k] = (lhs[k] && rhs[k]) ? 1 : 0;
        break;
      }
      case FormulaKind::Knows: {
        const std::size_t agent = rs.agent_index(g.agent());
        const auto& child = values[slot.at(g.child())];
        std::unordered_map<LocalState, std::uint8_t, LocalStateHash> verdict;
        for (std::size_t k = 0; k < idx.size(); ++k) {
          const LocalState& mine = global_of(rs, idx.points()[k]).parts[agent];
          auto it = verdict.find(mine);
          if (it == verdict.end()) {
            const auto& cls = idx.group(agent, mine);
            const bool v = std::all_of(cls.begin(), cls.end(),
                                       [&](std::uint32_t q) { return child[q] != 0; });
            it = verdict.emplace(mine, v ? 1 : 0).first;
          }
          row[k] = it->second;
        }
        break;
      }
      case FormulaKind::BKnows: {
        std::unordered_map<LocalState, std::uint8_t, LocalStateHash> verdict;
        for (std::size_t k = 0; k < idx.size(); ++k) {
          const LocalState& mine =
              global_of(rs, idx.points()[k]).parts[es.human_agent()];
          auto it = verdict.find(mine);
          if (it == verdict.end())
            it = verdict.emplace(mine, es.theta_contains(mine, g) ? 1 : 0).first;
          row[k] = it->second;
        }
        break;
      }
    }
    values[i] = std::move(row);
  }
  return values.back();
}

ValidityResult check_validity_es(const EpistemicSystem& es, const Formula& f) {
  const std::vector<std::uint8_t> vals = eval_es_all(es, f);
  for (std::size_t k = 0; k < vals.size(); ++k)
    if (!vals[k]) return ValidityResult{false, es.index().points()[k]};
  return ValidityResult{true, std::nullopt};
}

}  // namespace epimc
