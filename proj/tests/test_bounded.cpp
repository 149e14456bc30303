#include <doctest.h>

#include "epimc/bounded.hpp"
#include "epimc/errors.hpp"
#include "epimc/model_io.hpp"
#include "support/fuzz.hpp"

using namespace epimc;

namespace {

std::set<Literal> lits(const std::vector<std::string>& texts) {
  std::set<Literal> out;
  for (const std::string& t : texts) out.insert(parse_literal(t));
  return out;
}

std::vector<std::string> texts(const std::vector<Formula>& fs) {
  std::vector<std::string> out;
  for (const Formula& f : fs) out.push_back(f.text());
  return out;
}

AutomaticRule rule(const std::vector<std::string>& antecedents, const std::string& conclusion) {
  AutomaticRule r;
  for (const std::string& a : antecedents) r.antecedents.push_back(parse_literal(a));
  r.conclusion = parse_literal(conclusion);
  return r;
}

LocalState human_local(const LoadedModel& lm, const std::vector<std::string>& values) {
  const AgentDecl& h = lm.model.agents[lm.model.human_agent];
  LocalState l;
  l.agent = static_cast<std::uint32_t>(lm.model.human_agent);
  for (std::size_t v = 0; v < values.size(); ++v) {
    const auto& domain = h.variables[v].domain;
    l.values.push_back(
        static_cast<std::uint16_t>(std::find(domain.begin(), domain.end(), values[v]) -
                                   domain.begin()));
  }
  return l;
}

}  // namespace

TEST_CASE("automatic knowledge is extensive and applies one simultaneous round") {
  AutomaticRules none;
  CHECK(apply_automatic(none, lits({"p1"})).literals == lits({"p1"}));

  AutomaticRules pilot;
  pilot.rules.push_back(rule({"p1", "p2"}, "p3"));
  CHECK(apply_automatic(pilot, lits({"p1", "p2"})).literals == lits({"p1", "p2", "p3"}));
  CHECK(apply_automatic(pilot, lits({"p1"})).literals == lits({"p1"}));

  AutomaticRules chained;
  chained.rules.push_back(rule({"p"}, "q"));
  chained.rules.push_back(rule({"q"}, "s"));
  CHECK(apply_automatic(chained, lits({"p"})).literals == lits({"p", "q"}));

  chained.fixpoint = true;
  CHECK(apply_automatic(chained, lits({"p"})).literals == lits({"p", "q", "s"}));
}

TEST_CASE("contradictory automatic output is reported, not rejected") {
  AutomaticRules rules;
  rules.rules.push_back(rule({"p"}, "!q"));
  const AutomaticResult r = apply_automatic(rules, lits({"p", "q"}));
  CHECK(r.literals == lits({"p", "q", "!q"}));
  CHECK(r.contradictions == std::vector<std::string>{"q"});
}

TEST_CASE("deductions fire once and never feed back") {
  const std::vector<std::string> phi = {"p1", "p2", "p3", "q", "s", "t", "psi"};

  DeductionSet none;
  CHECK(texts(apply_deductions(none, lits({"p1", "!p2"}), phi)) ==
        std::vector<std::string>{"Khat p1", "Khat !p2"});

  DeductionSet pilot;
  pilot.items.push_back(parse_implication("p1 & p2 & p3 -> Khat psi"));
  CHECK(texts(apply_deductions(pilot, lits({"p1", "p2", "p3"}), phi)) ==
        std::vector<std::string>{"Khat p1", "Khat p2", "Khat p3", "Khat psi"});

  // conclusions are not antecedents: the s-deduction must not see Khat s
  DeductionSet chained;
  chained.items.push_back(parse_implication("q -> Khat s"));
  chained.items.push_back(parse_implication("s -> Khat t"));
  CHECK(texts(apply_deductions(chained, lits({"q"}), phi)) ==
        std::vector<std::string>{"Khat q", "Khat s"});
}

TEST_CASE("theta reproduces the trained pilot's knowledge exactly") {
  const LoadedModel lm = load_model(test::source_dir() + "/examples/pilot_approach.json");
  const LocalState l = human_local(lm, {"flaps.not.full", "landing.gear.up"});
  CHECK(texts(theta_apply(lm.setup("trained"), l)) ==
        std::vector<std::string>{"Khat p1", "Khat p2", "Khat p3", "Khat psi"});
}

TEST_CASE("theta on the naive operator includes the ready display at face value") {
  const LoadedModel lm = load_model(test::source_dir() + "/examples/therac_original.json");
  const LocalState l = human_local(lm, {"new.data.in", "sys.ready.yes"});
  const std::vector<std::string> theta = texts(theta_apply(lm.setup("naive"), l));
  CHECK(std::find(theta.begin(), theta.end(), "Khat p5") != theta.end());
  // the flawed mental model also concludes the edit was processed
  CHECK(std::find(theta.begin(), theta.end(), "Khat p4") != theta.end());

  EpistemicSetup empty;
  empty.name = "empty";
  empty.explicit_knowledge.table.emplace(l, std::vector<Literal>{});
  CHECK(theta_apply(empty, l).empty());

  LocalState uncovered = l;
  uncovered.values[0] = 0;
  CHECK_THROWS_AS(theta_apply(empty, uncovered), EvalError);
}

TEST_CASE("theta depends only on the local state") {
  test::Rng rng(99);
  const test::FuzzModel fm = test::random_model(rng);
  const RunSet rs = enumerate_runs(fm.model, 4);
  const PointIndex idx(rs);
  const EpistemicSetup setup = test::random_setup(rng, fm, rs, "rnd");
  const EpistemicSystem es(idx, fm.pi, setup, fm.model.human_agent);
  for (const Point& p : idx.points())
    for (const Point& q : idx.points()) {
      const LocalState& lp = global_of(rs, p).parts[fm.model.human_agent];
      const LocalState& lq = global_of(rs, q).parts[fm.model.human_agent];
      if (lp == lq) CHECK(texts(es.theta(lp)) == texts(es.theta(lq)));
    }
}

TEST_CASE("tier-1 inclusion and extensivity on fuzzed setups") {
  test::Rng rng(2718);
  for (int iter = 0; iter < 15; ++iter) {
    const test::FuzzModel fm = test::random_model(rng);
    const RunSet rs = enumerate_runs(fm.model, 3);
    const PointIndex idx(rs);
    const EpistemicSetup setup = test::random_setup(rng, fm, rs, "rnd");
    const EpistemicSystem es(idx, fm.pi, setup, fm.model.human_agent);
    for (const Point& p : idx.points()) {
      const LocalState& l = global_of(rs, p).parts[fm.model.human_agent];
      const auto& f_entry = setup.explicit_knowledge.table.at(l);
      const std::set<Literal> fl(f_entry.begin(), f_entry.end());
      const AutomaticResult ground = apply_automatic(setup.automatic, fl);
      for (const Literal& q : fl) CHECK(ground.literals.contains(q));
      for (const Literal& q : ground.literals)
        CHECK(es.theta_contains(l, Formula::bknows(q.to_formula())));
    }
  }
}

TEST_CASE("eval_es implements the Khat clause by syntactic membership") {
  const LoadedModel lm = load_model(test::source_dir() + "/examples/therac_original.json");
  const RunSet rs = enumerate_runs(lm.model, 8);
  const PointIndex idx(rs);
  const EpistemicSystem es(idx, lm.pi, lm.setup("naive"), lm.model.human_agent);

  // post-edit display points in both branches: same local state, same Khat p5
  std::optional<Point> race_point;
  std::optional<Point> processed_point;
  for (const Point& p : idx.points()) {
    const std::string& name = lm.model.state_name(global_of(rs, p));
    if (name == "g4" && !race_point) race_point = p;
    if (name == "g6" && !processed_point) processed_point = p;
  }
  REQUIRE(race_point);
  REQUIRE(processed_point);
  CHECK(eval_es(es, *race_point, parse_formula("Khat p5")));
  CHECK(eval_es(es, *processed_point, parse_formula("Khat p5")));
  // ... but p5 is false on the race branch: the display lies
  CHECK_FALSE(eval_es(es, *race_point, parse_formula("p5")));
  CHECK(eval_es(es, *processed_point, parse_formula("p5")));

  // membership is syntactic: formulas absent from Theta are not known
  CHECK_FALSE(eval_es(es, *race_point, parse_formula("Khat (p5 & p5)")));

  // the mistreating point: p_bad holds and the operator lacks Khat of it
  for (const Point& p : idx.points()) {
    if (lm.model.state_name(global_of(rs, p)) != "g5") continue;
    CHECK(eval_es(es, p, parse_formula("(!p4 & p6) & !Khat (!p4 & p6)")));
    break;
  }
}

TEST_CASE("eval_es and eval_pw agree on Khat-free formulas") {
  test::Rng rng(1234);
  int used = 0;
  while (used < 6) {
    const test::FuzzModel fm = test::random_model(rng);
    const RunSet rs = enumerate_runs(fm.model, 3);
    const PointIndex idx(rs);
    if (idx.size() > 100) continue;
    ++used;
    const EpistemicSetup setup = test::random_setup(rng, fm, rs, "rnd");
    const EpistemicSystem es(idx, fm.pi, setup, fm.model.human_agent);
    for (int i = 0; i < 10; ++i) {
      const Formula f = test::random_formula(rng, fm.model, 3, true, 1);
      const std::vector<std::uint8_t> a = eval_es_all(es, f);
      const std::vector<std::uint8_t> b = eval_pw_all(idx, fm.pi, f);
      CHECK(a == b);
      for (std::size_t k = 0; k < idx.size(); ++k)
        CHECK(static_cast<bool>(a[k]) == eval_es(es, idx.points()[k], f));
    }
  }
}

TEST_CASE("sealing requires the explicit map to cover reachable local states") {
  const LoadedModel lm = load_model(test::source_dir() + "/examples/therac_original.json");
  const RunSet rs = enumerate_runs(lm.model, 8);
  const PointIndex idx(rs);
  EpistemicSetup broken = lm.setup("naive");
  broken.explicit_knowledge.table.erase(
      human_local(lm, {"new.data.in", "treating"}));
  CHECK_THROWS_AS(EpistemicSystem(idx, lm.pi, broken, lm.model.human_agent), ModelError);
}
