#include "epimc/state.hpp"

#include "epimc/errors.hpp"

namespace epimc {

namespace {

std::size_t combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::size_t LocalStateHash::operator()(const LocalState& l) const {
  std::size_t h = l.agent + 1;
  for (std::uint16_t v : l.values) h = combine(h, v);
  return h;
}

std::size_t GlobalStateHash::operator()(const GlobalState& g) const {
  std::size_t h = 0x51ed270b;
  LocalStateHash lh;
  for (const LocalState& l : g.parts) h = combine(h, lh(l));
  return h;
}

std::size_t RunSet::agent_index(const std::string& name) const {
  for (std::size_t i = 0; i < agents.size(); ++i)
    if (agents[i] == name) return i;
  throw EvalError("unknown agent '" + name + "'");
}

const GlobalState& global_of(const RunSet& rs, Point p) {
  if (p.run >= rs.runs.size()) throw EvalError("point refers to run out of range");
  const Run& run = rs.runs[p.run];
  if (p.time < run.states.size()) return run.states[p.time];
  if (run.absorbing && p.time <= rs.horizon) return run.states.back();
  throw EvalError("point time out of range for a non-absorbing run");
}

const LocalState& local_of(const RunSet& rs, Point p, std::size_t agent) {
  const GlobalState& g = global_of(rs, p);
  if (agent >= g.parts.size()) throw EvalError("agent index out of range");
  return g.parts[agent];
}

const LocalState& local_of(const RunSet& rs, Point p, const std::string& agent) {
  return local_of(rs, p, rs.agent_index(agent));
}

bool indistinguishable(const RunSet& rs, Point a, Point b, std::size_t agent) {
  return local_of(rs, a, agent) == local_of(rs, b, agent);
}

bool indistinguishable(const RunSet& rs, Point a, Point b, const std::string& agent) {
  return indistinguishable(rs, a, b, rs.agent_index(agent));
}

std::vector<Point> points_indistinguishable_from(const RunSet& rs, Point p,
                                                 const std::string& agent,
                                                 const std::vector<Point>& points) {
  const std::size_t idx = rs.agent_index(agent);
  const LocalState& mine = local_of(rs, p, idx);
  std::vector<Point> out;
  for (const Point& q : points)
    if (local_of(rs, q, idx) == mine) out.push_back(q);
  return out;
}

std::vector<Point> all_points(const RunSet& rs) {
  std::vector<Point> out;
  for (std::uint32_t r = 0; r < rs.runs.size(); ++r)
    for (std::uint32_t m = 0; m < rs.runs[r].states.size(); ++m)
      out.push_back(Point{r, m});
  return out;
}

Point normalize_point(const RunSet& rs, Point p) {
  (void)global_of(rs, p);  // bounds check, including the absorbing rule
  const auto stored = static_cast<std::uint32_t>(rs.runs[p.run].states.size());
  if (p.time >= stored) p.time = stored - 1;
  return p;
}

const char* to_string(AgentKind kind) {
  switch (kind) {
    case AgentKind::Environment: return "environment";
    case AgentKind::Human: return "human";
    case AgentKind::Automation: return "automation";
  }
  return "?";
}

AgentKind agent_kind_from_string(const std::string& s) {
  if (s == "environment") return AgentKind::Environment;
  if (s == "human") return AgentKind::Human;
  if (s == "automation") return AgentKind::Automation;
  throw ModelError("unknown agent kind '" + s + "'");
}

}  // namespace epimc
