#include "epimc/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "epimc/errors.hpp"

namespace epimc {

namespace {

Formula conjoin(const std::vector<Literal>& literals) {
  Formula acc;
  for (const Literal& l : literals)
    acc = acc.valid() ? Formula::conjunction(acc, l.to_formula()) : l.to_formula();
  return acc;
}

}  // namespace

SoundnessVerdict check_soundness(const EpistemicSystem& es) {
  SoundnessVerdict verdict;
  const PointIndex& idx = es.index();
  const RunSet& rs = idx.runs();

  // Clause 1: every ground literal true wherever it is known. The ground set
  // depends only on the local state, so evaluate literal truth per point.
  for (const Point& p : idx.points()) {
    const LocalState& l = global_of(rs, p).parts[es.human_agent()];
    for (const Literal& q : EpistemicSystemAccess::ground(es, l)) {
      const bool value = es.interpretation().value(q.prop, global_of(rs, p));
      if (value == q.negated)
        verdict.witnesses.push_back(SoundnessWitness{WitnessKind::Clause1, p, q, 0});
    }
  }

  // Clause 2: antecedents -> conclusion valid in E for every deduction.
  const auto& deductions = es.setup().deductions.items;
  for (std::size_t d = 0; d < deductions.size(); ++d) {
    const Implication& impl = deductions[d];
    const std::vector<std::uint8_t> ant = eval_es_all(es, conjoin(impl.antecedents));
    const std::vector<std::uint8_t> con = eval_es_all(es, impl.conclusion);
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (ant[k] && !con[k])
        verdict.witnesses.push_back(
            SoundnessWitness{WitnessKind::Clause2, idx.points()[k], Literal{}, d});
  }

  std::sort(verdict.witnesses.begin(), verdict.witnesses.end(),
            [](const SoundnessWitness& a, const SoundnessWitness& b) {
              if (a.kind != b.kind) return a.kind < b.kind;
              if (a.point != b.point) return a.point < b.point;
              if (a.kind == WitnessKind::Clause1) return a.literal < b.literal;
              return a.deduction < b.deduction;
            });
  verdict.sound = verdict.witnesses.empty();
  return verdict;
}

AdequacyVerdict check_adequacy(const EpistemicSystem& es, const BadStateSpec& bad) {
  if (bad.formula.contains_epistemic())
    throw EvalError("the bad-state condition must not contain epistemic operators");
  AdequacyVerdict verdict;
  verdict.soundness = check_soundness(es);

  const PointIndex& idx = es.index();
  const RunSet& rs = idx.runs();
  const Formula khat_bad = Formula::bknows(bad.formula);
  const std::vector<std::uint8_t> bad_at = eval_pw_all(idx, es.interpretation(), bad.formula);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (!bad_at[k]) continue;
    const Point p = idx.points()[k];
    const LocalState& l = global_of(rs, p).parts[es.human_agent()];
    if (!es.theta_contains(l, khat_bad)) verdict.missing_knowledge.push_back(p);
  }
  verdict.adequate = verdict.missing_knowledge.empty() && verdict.soundness.sound;
  return verdict;
}

ObstructionResult adequacy_impossible(const PointIndex& idx, const Interpretation& pi,
                                      const BadStateSpec& bad, std::size_t human_agent) {
  if (bad.formula.contains_epistemic())
    throw EvalError("the bad-state condition must not contain epistemic operators");
  const RunSet& rs = idx.runs();
  const std::vector<std::uint8_t> bad_at = eval_pw_all(idx, pi, bad.formula);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (!bad_at[k]) continue;
    const Point p = idx.points()[k];
    const LocalState& mine = global_of(rs, p).parts[human_agent];
    for (std::uint32_t q : idx.group(human_agent, mine)) {
      if (!bad_at[q])
        return ObstructionResult{std::make_pair(p, idx.points()[q])};
    }
  }
  return ObstructionResult{};
}

SynthesisResult synthesize_max_sound_setup(const PointIndex& idx, const Interpretation& pi,
                                           DeductionSet deductions, std::size_t human_agent,
                                           std::string name) {
  SynthesisResult result;
  result.setup.name = std::move(name);
  result.setup.phi = pi.props();
  const RunSet& rs = idx.runs();

  // f(l): literals invariant across l's indistinguishability class. This is
  // exactly propositional possible-worlds knowledge projected to literals.
  std::map<LocalState, std::vector<Literal>> table;
  for (const Point& p : idx.points()) {
    const LocalState& l = global_of(rs, p).parts[human_agent];
    if (table.contains(l)) continue;
    const auto& cls = idx.group(human_agent, l);
    std::vector<Literal> knows;
    for (std::size_t prop = 0; prop < pi.props().size(); ++prop) {
      bool always_true = true;
      bool always_false = true;
      for (std::uint32_t q : cls) {
        const bool v = pi.value(prop, global_of(rs, idx.points()[q]));
        always_true &= v;
        always_false &= !v;
      }
      if (always_true) knows.push_back(Literal{pi.props()[prop], false});
      if (always_false) knows.push_back(Literal{pi.props()[prop], true});
    }
    table.emplace(l, std::move(knows));
  }
  for (auto& [l, knows] : table)
    result.setup.explicit_knowledge.table.emplace(l, std::move(knows));

  for (Implication& impl : deductions.items) {
    if (impl.conclusion.contains_bknows()) {
      result.dropped.push_back(impl.text() +
                               " (conclusion uses Khat; cannot be checked against (R, pi))");
      continue;
    }
    // antecedents -> conclusion, spelled !(ant & !conclusion)
    const Formula check = Formula::negation(Formula::conjunction(
        conjoin(impl.antecedents), Formula::negation(impl.conclusion)));
    const ValidityResult validity = check_validity(idx, pi, check);
    if (!validity.valid) {
      result.dropped.push_back(impl.text() + " (not valid on (R, pi))");
      continue;
    }
    result.setup.deductions.items.push_back(std::move(impl));
  }
  return result;
}

KnowledgeBridge verify_knowledge_bridge(const EpistemicSystem& es) {
  if (!check_soundness(es).sound)
    return KnowledgeBridge{KnowledgeBridge::Status::NotApplicable, std::nullopt, std::nullopt};

  const PointIndex& idx = es.index();
  const RunSet& rs = idx.runs();
  const std::string& h = es.human_name();

  // K_h phi evaluated once per distinct phi appearing under Khat in any Theta.
  std::map<std::string, std::vector<std::uint8_t>> known;
  for (const Point& p : idx.points()) {
    const LocalState& l = global_of(rs, p).parts[es.human_agent()];
    for (const Formula& theta : es.theta(l)) {
      const Formula& phi = theta.child();
      auto it = known.find(phi.text());
      if (it == known.end())
        it = known.emplace(phi.text(), eval_es_all(es, Formula::knows(h, phi))).first;
      if (!it->second[idx.ordinal(p)])
        return KnowledgeBridge{KnowledgeBridge::Status::Violation, p, phi};
    }
  }
  return KnowledgeBridge{KnowledgeBridge::Status::Verified, std::nullopt, std::nullopt};
}

}  // namespace epimc
