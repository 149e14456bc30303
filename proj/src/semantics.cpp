#include "epimc/semantics.hpp"

#include <algorithm>

#include "epimc/errors.hpp"

namespace epimc {

Interpretation::Interpretation(std::vector<std::string> prop_names)
    : props_(std::move(prop_names)) {
  for (std::size_t i = 0; i < props_.size(); ++i) index_.emplace(props_[i], i);
}

void Interpretation::set(const GlobalState& g, std::size_t prop, bool value) {
  auto& row = table_[g];
  if (row.empty()) row.assign(props_.size(), -1);
  row.at(prop) = value ? 1 : 0;
}

bool Interpretation::value(std::size_t prop, const GlobalState& g) const {
  auto it = table_.find(g);
  if (it == table_.end())
    throw EvalError("interpretation has no entries for the queried state");
  const std::int8_t v = it->second.at(prop);
  if (v < 0)
    throw EvalError("interpretation does not map proposition '" + props_.at(prop) +
                    "' at the queried state");
  return v == 1;
}

bool Interpretation::value(const std::string& prop, const GlobalState& g) const {
  return value(prop_index(prop), g);
}

std::size_t Interpretation::prop_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw EvalError("unknown proposition '" + name + "'");
  return it->second;
}

bool Interpretation::covers(const GlobalState& g) const {
  auto it = table_.find(g);
  if (it == table_.end()) return false;
  return std::all_of(it->second.begin(), it->second.end(),
                     [](std::int8_t v) { return v >= 0; });
}

PointIndex::PointIndex(const RunSet& rs) : rs_(&rs) {
  run_offsets_.reserve(rs.runs.size() + 1);
  run_offsets_.push_back(0);
  for (std::uint32_t r = 0; r < rs.runs.size(); ++r) {
    for (std::uint32_t m = 0; m < rs.runs[r].states.size(); ++m)
      points_.push_back(Point{r, m});
    run_offsets_.push_back(static_cast<std::uint32_t>(points_.size()));
  }
  groups_.resize(rs.agents.size());
  for (std::uint32_t i = 0; i < points_.size(); ++i) {
    const GlobalState& g = global_of(rs, points_[i]);
    for (std::size_t a = 0; a < groups_.size(); ++a)
      groups_[a][g.parts[a]].push_back(i);
  }
}

std::size_t PointIndex::ordinal(Point p) const {
  if (p.run >= rs_->runs.size())
    throw EvalError("point refers to run out of range");
  if (p.time >= rs_->runs[p.run].states.size())
    throw EvalError("point time beyond the stored run prefix");
  return run_offsets_[p.run] + p.time;
}

const std::vector<std::uint32_t>& PointIndex::group(std::size_t agent,
                                                    const LocalState& l) const {
  static const std::vector<std::uint32_t> kEmpty;
  auto it = groups_.at(agent).find(l);
  return it == groups_.at(agent).end() ? kEmpty : it->second;
}

bool eval_pw(const RunSet& rs, const Interpretation& pi, Point p, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Prop:
      return pi.value(f.prop_name(), global_of(rs, p));
    case FormulaKind::Not:
      return !eval_pw(rs, pi, p, f.child());
    case FormulaKind::And:
      return eval_pw(rs, pi, p, f.left()) && eval_pw(rs, pi, p, f.right());
    case FormulaKind::Knows: {
      const std::size_t agent = rs.agent_index(f.agent());
      const LocalState& mine = local_of(rs, p, agent);
      for (std::uint32_t r = 0; r < rs.runs.size(); ++r)
        for (std::uint32_t m = 0; m < rs.runs[r].states.size(); ++m) {
          const Point q{r, m};
          if (local_of(rs, q, agent) == mine && !eval_pw(rs, pi, q, f.child()))
            return false;
        }
      return true;
    }
    case FormulaKind::BKnows:
      throw EvalError("bounded knowledge operator reached the possible-worlds "
                      "evaluator; evaluate against an epistemic system instead");
  }
  throw EvalError("bad formula node");
}

std::vector<std::uint8_t> eval_pw_all(const PointIndex& idx, const Interpretation& pi,
                                      const Formula& f) {
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
        const std::size_t prop = pi.prop_index(g.prop_name());
        for (std::size_t k = 0; k < idx.size(); ++k)
          row[k] = pi.value(prop, global_of(rs, idx.points()[k])) ? 1 : 0;
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
        // One verdict per indistinguishability class, shared by its members.
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
      case FormulaKind::BKnows:
        throw EvalError("bounded knowledge operator reached the possible-worlds "
                        "evaluator; evaluate against an epistemic system instead");
    }
    values[i] = std::move(row);
  }
  return values.back();
}

ValidityResult check_validity(const PointIndex& idx, const Interpretation& pi,
                              const Formula& f) {
  const std::vector<std::uint8_t> vals = eval_pw_all(idx, pi, f);
  for (std::size_t k = 0; k < vals.size(); ++k)
    if (!vals[k]) return ValidityResult{false, idx.points()[k]};
  return ValidityResult{true, std::nullopt};
}

}  // namespace epimc
