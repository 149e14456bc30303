#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "epimc/errors.hpp"
#include "epimc/bounded.hpp"
#include "epimc/model_io.hpp"
#include "epimc/report.hpp"
#include "support/fuzz.hpp"
#include "support/schema_check.hpp"

using namespace epimc;
using Json = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Json bundled(const std::string& file) {
  return Json::parse(slurp(test::source_dir() + "/examples/" + file));
}

}  // namespace

TEST_CASE("the bundled case studies load with the expected shape") {
  const LoadedModel original = load_model(test::source_dir() + "/examples/therac_original.json");
  CHECK(original.model.agents.size() == 2);
  CHECK(original.model.propositions.size() == 6);
  CHECK(original.has_setup("naive"));
  CHECK(original.default_horizon == 8);
  CHECK(original.bad_text == "!p4 & p6");
  CHECK(original.warnings.empty());

  const LoadedModel modified = load_model(test::source_dir() + "/examples/therac_modified.json");
  CHECK(modified.model.propositions.size() == 7);
  CHECK(modified.model.propositions.back().name == "p7");
  CHECK(modified.has_setup("fixed"));
  CHECK(modified.default_horizon == 10);

  const LoadedModel driver = load_model(test::source_dir() + "/examples/driver_speeding.json");
  CHECK(driver.model.agents.size() == 3);
  // canonical order puts the environment first
  CHECK(driver.model.agents[0].kind == AgentKind::Environment);
  CHECK(driver.model.agents[driver.model.human_agent].name == "h");
}

TEST_CASE("validation errors carry document paths") {
  Json doc = bundled("pilot_approach.json");

  SUBCASE("protocol references an undeclared action") {
    doc["protocols"]["h"][0]["actions"][0] = "retract.flaps";
    try {
      load_model_from_string(doc.dump());
      FAIL("expected a validation error");
    } catch (const ModelError& e) {
      CHECK(e.path() == "/protocols/h/0/actions");
    }
  }
  SUBCASE("schema version mismatch") {
    doc["schema_version"] = 2;
    CHECK_THROWS_AS(load_model_from_string(doc.dump()), ModelError);
  }
  SUBCASE("interpretation must be total") {
    doc["interpretation"]["s.approach"].erase("psi");
    try {
      load_model_from_string(doc.dump());
      FAIL("expected a validation error");
    } catch (const ModelError& e) {
      CHECK(e.path() == "/interpretation/s.approach");
    }
  }
  SUBCASE("state values must come from the declared domain") {
    doc["states"]["s.approach"]["h"]["flaps"] = "flaps.gone";
    try {
      load_model_from_string(doc.dump());
      FAIL("expected a validation error");
    } catch (const ModelError& e) {
      CHECK(e.path() == "/states/s.approach/h/flaps");
    }
  }
  SUBCASE("transitions must respect the protocols") {
    Json edge = Json::object();
    edge["from"] = "s.go.around";
    edge["action"] = {{"h", "input"}, {"a", "nop"}};
    doc["transitions"].push_back(edge);
    CHECK_THROWS_AS(load_model_from_string(doc.dump()), ModelError);
  }
  SUBCASE("bad formula must be epistemic free") {
    doc["bad"] = "K[h] p1";
    try {
      load_model_from_string(doc.dump());
      FAIL("expected a validation error");
    } catch (const ModelError& e) {
      CHECK(e.path() == "/bad");
    }
  }
  SUBCASE("explicit knowledge rejects a literal next to its negation") {
    doc["setups"]["trained"]["explicit"][0]["knows"] = {"p1", "!p1"};
    CHECK_THROWS_AS(load_model_from_string(doc.dump()), ModelError);
  }
  SUBCASE("exactly one human agent") {
    doc["agents"][1]["kind"] = "human";
    CHECK_THROWS_AS(load_model_from_string(doc.dump()), ModelError);
  }
  SUBCASE("nop is required in every alphabet") {
    doc["agents"][1]["actions"] = {"idle"};
    CHECK_THROWS_AS(load_model_from_string(doc.dump()), ModelError);
  }
}

TEST_CASE("missing files and broken JSON are load errors") {
  CHECK_THROWS_AS(load_model(test::source_dir() + "/examples/no_such_model.json"), ModelError);
  CHECK_THROWS_AS(load_model_from_string("{not json"), ModelError);
  CHECK_THROWS_AS(load_model_from_string("[]"), ModelError);
}

TEST_CASE("the automatic fixpoint mode round-trips through the document") {
  Json doc = bundled("pilot_approach.json");
  doc["setups"]["trained"]["automatic"]["fixpoint"] = true;
  doc["setups"]["trained"]["automatic"]["rules"].push_back({{"if", {"p3"}}, {"then", "psi"}});
  const LoadedModel lm = load_model_from_string(doc.dump());
  const EpistemicSetup& setup = lm.setup("trained");
  REQUIRE(setup.automatic.fixpoint);
  // chained rules close under iteration: p1,p2 -> p3 -> psi in one call
  const AutomaticResult r = apply_automatic(
      setup.automatic, {parse_literal("p1"), parse_literal("p2")});
  CHECK(r.literals.contains(parse_literal("psi")));
  const std::string saved = save_model(lm);
  CHECK(saved.find("\"fixpoint\": true") != std::string::npos);
  CHECK(load_model_from_string(saved).setup("trained").automatic.fixpoint);
}

TEST_CASE("unused propositions are warned about") {
  Json doc = bundled("driver_speeding.json");
  doc["propositions"].push_back({{"name", "unused.prop"}});
  for (auto& [state, row] : doc["interpretation"].items()) row["unused.prop"] = false;
  const LoadedModel lm = load_model_from_string(doc.dump());
  REQUIRE(lm.warnings.size() == 1);
  CHECK(lm.warnings[0].find("unused.prop") != std::string::npos);
}

TEST_CASE("declared but unreachable states are warned about") {
  Json doc = bundled("pilot_approach.json");
  doc["states"]["s.limbo"] = doc["states"]["s.go.around"];
  doc["states"]["s.limbo"]["a"]["phase"] = "final.approach";
  // make it distinct from s.approach by flipping a human variable
  doc["states"]["s.limbo"]["h"]["flaps"] = "flaps.full";
  doc["interpretation"]["s.limbo"] = doc["interpretation"]["s.approach"];
  doc["protocols"]["h"].push_back(Json::object(
      {{"state", doc["states"]["s.limbo"]["h"]}, {"actions", {"nop"}}}));
  const LoadedModel lm = load_model_from_string(doc.dump());
  const RunSet rs = enumerate_runs(lm.model, 4);
  const std::vector<std::string> warnings = validate_reachability(lm, rs);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("s.limbo") != std::string::npos);
}

TEST_CASE("an enabled action with no transition entry is a model error") {
  Json doc = bundled("pilot_approach.json");
  // drop the go-around edge: the protocol still enables the action
  Json transitions = Json::array();
  for (const auto& edge : doc["transitions"])
    if (edge["to"] != "s.go.around") transitions.push_back(edge);
  doc["transitions"] = transitions;
  doc["states"].erase("s.go.around");
  doc["interpretation"].erase("s.go.around");
  doc["protocols"]["a"].erase(1);
  const LoadedModel lm = load_model_from_string(doc.dump());
  CHECK_THROWS_AS(enumerate_runs(lm.model, 4), ModelError);
}

TEST_CASE("bundled models validate against the published model schema") {
  const test::SchemaChecker checker(
      Json::parse(slurp(test::source_dir() + "/schemas/model.schema.json")));
  for (const char* file : {"therac_original.json", "therac_modified.json",
                           "pilot_approach.json", "driver_speeding.json"}) {
    const std::vector<std::string> errors = checker.validate(bundled(file));
    for (const std::string& e : errors) MESSAGE(file, ": ", e);
    CHECK(errors.empty());
  }
  // and the checker itself rejects malformed documents
  Json broken = bundled("pilot_approach.json");
  broken["agents"][0]["kind"] = "robot";
  broken["extra_key"] = 1;
  CHECK(checker.validate(broken).size() == 2);
}

TEST_CASE("verdict documents validate against the published verdict schema") {
  const test::SchemaChecker checker(
      Json::parse(slurp(test::source_dir() + "/schemas/verdict.schema.json")));
  for (const char* file : {"therac_original.json", "therac_modified.json"}) {
    const LoadedModel lm = load_model(test::source_dir() + "/examples/" + std::string(file));
    const RunSet rs = enumerate_runs(lm.model, lm.default_horizon);
    const PointIndex idx(rs);
    const ReportContext ctx{lm, rs, idx};
    const CheckReport check =
        run_check(ctx, lm.setups.front(), CheckRequest{true, true});
    std::vector<std::string> errors = checker.validate(check.json);
    for (const std::string& e : errors) MESSAGE(file, " check: ", e);
    CHECK(errors.empty());

    const ImpossibleReport impossible = run_impossible(ctx);
    errors = checker.validate(impossible.json);
    for (const std::string& e : errors) MESSAGE(file, " impossible: ", e);
    CHECK(errors.empty());
  }
}

TEST_CASE("save/load round trip is byte-stable") {
  for (const char* file : {"therac_original.json", "therac_modified.json",
                           "pilot_approach.json", "driver_speeding.json"}) {
    const LoadedModel lm = load_model(test::source_dir() + "/examples/" + std::string(file));
    const std::string once = save_model(lm);
    const LoadedModel again = load_model_from_string(once, file);
    CHECK(save_model(again) == once);
  }
}
