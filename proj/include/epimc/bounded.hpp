#pragma once

#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "epimc/formula.hpp"
#include "epimc/semantics.hpp"
#include "epimc/state.hpp"

namespace epimc {

// Tier 1: which literals the human reads directly off the interface, as a
// function of the local state. Must cover every reachable human local state.
struct ExplicitMap {
  std::unordered_map<LocalState, std::vector<Literal>, LocalStateHash> table;
};

struct AutomaticRule {
  std::vector<Literal> antecedents;
  Literal conclusion;
};

// Tier 2: immediate ground conclusions. Applied as one simultaneous round
// unioned with the input (so the map is extensive); setting fixpoint iterates
// the round until stable instead.
struct AutomaticRules {
  std::vector<AutomaticRule> rules;
  bool fixpoint = false;
};

// Tier 3: one-shot deductions. Conclusions never feed back as antecedents.
struct DeductionSet {
  std::vector<Implication> items;
};

struct EpistemicSetup {
  std::string name;
  ExplicitMap explicit_knowledge;
  AutomaticRules automatic;
  DeductionSet deductions;
  std::vector<std::string> phi;  // proposition order, fixes canonical output
};

struct AutomaticResult {
  std::set<Literal> literals;
  std::vector<std::string> contradictions;  // propositions present in both polarities
};

// T united with every rule conclusion whose antecedents all lie in T.
// Contradictory output is reported, not rejected; the soundness checker will
// surface whichever side is false.
AutomaticResult apply_automatic(const AutomaticRules& rules, const std::set<Literal>& input);

// d_h(T): Khat of every literal in T, plus Khat of the conclusion of every
// deduction whose antecedents all lie in T. Single round; deduced formulas
// are not available as antecedents.
std::vector<Formula> apply_deductions(const DeductionSet& deductions,
                                      const std::set<Literal>& input,
                                      const std::vector<std::string>& phi);

// Theta(l) = d(a(f(l))), canonically ordered: literal knowledge first (by
// proposition order, positive before negated), then deduction conclusions in
// declaration order. Throws EvalError when l is missing from the explicit map.
std::vector<Formula> theta_apply(const EpistemicSetup& setup, const LocalState& l);

// E = (R, pi, Theta). Construction seals the setup: Theta is computed for
// every stored human local state up front, so coverage errors surface here
// and evaluation afterwards is pure.
class EpistemicSystem {
public:
  EpistemicSystem(const PointIndex& idx, const Interpretation& pi, EpistemicSetup setup,
                  std::size_t human_agent);

  const PointIndex& index() const { return *idx_; }
  const RunSet& runs() const { return idx_->runs(); }
  const Interpretation& interpretation() const { return *pi_; }
  const EpistemicSetup& setup() const { return setup_; }
  std::size_t human_agent() const { return human_; }
  const std::string& human_name() const { return runs().agents[human_]; }

  const std::vector<Formula>& theta(const LocalState& l) const;      // throws EvalError
  bool theta_contains(const LocalState& l, const Formula& f) const;

  // Contradiction warnings produced while sealing, one per affected local state.
  const std::vector<std::string>& warnings() const { return warnings_; }

private:
  struct Entry {
    std::vector<Formula> ordered;
    std::set<std::string> members;  // canonical texts, for O(log n) lookup
    std::set<Literal> ground;       // a(f(l)), reused by the soundness checker
  };

  const Entry& entry(const LocalState& l) const;

  const PointIndex* idx_;
  const Interpretation* pi_;
  EpistemicSetup setup_;
  std::size_t human_;
  std::unordered_map<LocalState, Entry, LocalStateHash> cache_;
  std::vector<std::string> warnings_;

  friend struct EpistemicSystemAccess;
};

// Internal accessor for analysis code that needs the ground sets.
struct EpistemicSystemAccess {
  static const std::set<Literal>& ground(const EpistemicSystem& es, const LocalState& l);
};

// Full L+ evaluation at one point: propositional clauses by pi, K_i by
// possible worlds over E, Khat by syntactic membership in Theta of the
// human's local state.
bool eval_es(const EpistemicSystem& es, Point p, const Formula& f);

// Memoized variant over every stored point, one pass per subformula.
std::vector<std::uint8_t> eval_es_all(const EpistemicSystem& es, const Formula& f);

// Validity of f in E; first counterexample in canonical order otherwise.
ValidityResult check_validity_es(const EpistemicSystem& es, const Formula& f);

}  // namespace epimc
