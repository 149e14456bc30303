#include "epimc/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "epimc/errors.hpp"

namespace epimc {

using Json = nlohmann::ordered_json;

std::string render_point_brief(const ReportContext& ctx, Point p) {
  std::ostringstream out;
  out << "run " << p.run << ", time " << p.time << ", state "
      << ctx.lm.model.state_name(global_of(ctx.rs, p));
  return out.str();
}

std::string render_point_prefix(const ReportContext& ctx, Point p) {
  const Run& run = ctx.rs.runs.at(p.run);
  std::ostringstream out;
  const std::uint32_t last = std::min<std::uint32_t>(p.time, run.states.size() - 1);
  for (std::uint32_t m = 0; m <= last; ++m) {
    if (m > 0) out << " -> ";
    out << ctx.lm.model.state_name(run.states[m]);
  }
  return out.str();
}

Json point_to_json(const ReportContext& ctx, Point p) {
  Json out = Json::object();
  out["run"] = p.run;
  out["time"] = p.time;
  out["state"] = ctx.lm.model.state_name(global_of(ctx.rs, p));
  Json prefix = Json::array();
  const Run& run = ctx.rs.runs.at(p.run);
  const std::uint32_t last = std::min<std::uint32_t>(p.time, run.states.size() - 1);
  for (std::uint32_t m = 0; m <= last; ++m)
    prefix.push_back(ctx.lm.model.state_name(run.states[m]));
  out["prefix"] = std::move(prefix);
  out["human_local"] =
      ctx.lm.model.render_local(global_of(ctx.rs, p).parts[ctx.lm.model.human_agent]);
  return out;
}

namespace {

std::string human_local_text(const ReportContext& ctx, Point p) {
  return ctx.lm.model.render_local(global_of(ctx.rs, p).parts[ctx.lm.model.human_agent]);
}

void describe_witness(const ReportContext& ctx, const EpistemicSetup& setup,
                      const SoundnessWitness& w, std::ostringstream& text, Json& json) {
  Json entry = point_to_json(ctx, w.point);
  if (w.kind == WitnessKind::Clause1) {
    text << "  - literal " << w.literal.text() << " false at " << render_point_brief(ctx, w.point)
         << ", prefix " << render_point_prefix(ctx, w.point) << ", h sees "
         << human_local_text(ctx, w.point) << "\n";
    entry["literal"] = w.literal.text();
  } else {
    const Implication& impl = setup.deductions.items.at(w.deduction);
    text << "  - deduction \"" << impl.text() << "\" fails at "
         << render_point_brief(ctx, w.point) << ", prefix " << render_point_prefix(ctx, w.point)
         << ", h sees " << human_local_text(ctx, w.point) << "\n";
    entry["deduction"] = impl.text();
  }
  json.push_back(std::move(entry));
}

}  // namespace

CheckReport run_check(const ReportContext& ctx, const EpistemicSetup& setup,
                      const CheckRequest& request) {
  CheckReport report;
  std::ostringstream text;
  Json& json = report.json;
  json = Json::object();
  json["schema_version"] = 1;
  json["kind"] = "check";
  json["model"] = ctx.lm.model.name;
  json["setup"] = setup.name;
  json["horizon"] = ctx.rs.horizon;
  json["runs"] = ctx.rs.runs.size();
  json["points"] = ctx.idx.size();
  json["reachable_states"] = reachable_states(ctx.lm.model, ctx.rs).size();

  text << "model: " << ctx.lm.model.name << "\n";
  text << "setup: " << setup.name << "\n";
  text << "horizon: " << ctx.rs.horizon << "\n";
  text << "runs: " << ctx.rs.runs.size() << "\n";
  text << "points: " << ctx.idx.size() << "\n";
  text << "reachable states: " << json["reachable_states"].get<std::size_t>() << "\n";

  const EpistemicSystem es(ctx.idx, ctx.lm.pi, setup, ctx.lm.model.human_agent);
  for (const std::string& w : es.warnings()) text << "warning: " << w << "\n";

  bool ok = true;

  if (request.soundness || request.adequacy) {
    // Adequacy includes soundness by definition, so the soundness section is
    // rendered for either request; compute the verdict once.
    const SoundnessVerdict soundness = check_soundness(es);
    {
      text << "\nsoundness: " << (soundness.sound ? "SOUND" : "UNSOUND") << "\n";
      Json clause1 = Json::array();
      Json clause2 = Json::array();
      std::size_t n1 = 0;
      std::size_t n2 = 0;
      std::ostringstream lines1;
      std::ostringstream lines2;
      for (const SoundnessWitness& w : soundness.witnesses) {
        if (w.kind == WitnessKind::Clause1) {
          describe_witness(ctx, setup, w, lines1, clause1);
          ++n1;
        } else {
          describe_witness(ctx, setup, w, lines2, clause2);
          ++n2;
        }
      }
      text << "clause-1 witnesses (known literal false at point): " << n1 << "\n"
           << lines1.str();
      text << "clause-2 witnesses (deduction invalid at point): " << n2 << "\n"
           << lines2.str();
      Json s = Json::object();
      s["status"] = soundness.sound ? "sound" : "unsound";
      s["clause1"] = std::move(clause1);
      s["clause2"] = std::move(clause2);
      json["soundness"] = std::move(s);
      if (request.soundness) ok = ok && soundness.sound;
    }

    if (request.adequacy) {
      AdequacyVerdict adequacy;
      adequacy.soundness = soundness;
      const Formula khat_bad = Formula::bknows(ctx.lm.bad.formula);
      const std::vector<std::uint8_t> bad_at = eval_pw_all(ctx.idx, ctx.lm.pi, ctx.lm.bad.formula);
      for (std::size_t k = 0; k < ctx.idx.size(); ++k) {
        if (!bad_at[k]) continue;
        const Point p = ctx.idx.points()[k];
        const LocalState& l = global_of(ctx.rs, p).parts[ctx.lm.model.human_agent];
        if (!es.theta_contains(l, khat_bad)) adequacy.missing_knowledge.push_back(p);
      }
      adequacy.adequate = adequacy.missing_knowledge.empty() && soundness.sound;

      text << "\nadequacy: " << (adequacy.adequate ? "ADEQUATE" : "INADEQUATE") << "\n";
      text << "p_bad (= " << ctx.lm.bad.formula.text() << ") points lacking Khat of it: "
           << adequacy.missing_knowledge.size() << "\n";
      Json missing = Json::array();
      for (const Point& p : adequacy.missing_knowledge) {
        text << "  - " << render_point_brief(ctx, p) << ", prefix " << render_point_prefix(ctx, p)
             << ", h sees " << human_local_text(ctx, p) << "\n";
        missing.push_back(point_to_json(ctx, p));
      }
      if (!soundness.sound)
        text << "soundness required by adequacy does not hold (see soundness section)\n";
      Json a = Json::object();
      a["status"] = adequacy.adequate ? "adequate" : "inadequate";
      a["missing_knowledge"] = std::move(missing);
      a["sound"] = soundness.sound;
      json["adequacy"] = std::move(a);
      ok = ok && adequacy.adequate;

      // The obstruction search is setup-independent; report it with adequacy
      // because a hit explains every possible setup's failure at once.
      const ObstructionResult obstruction =
          adequacy_impossible(ctx.idx, ctx.lm.pi, ctx.lm.bad, ctx.lm.model.human_agent);
      Json o = Json::object();
      if (obstruction.witness) {
        const auto& [bad_point, good_point] = *obstruction.witness;
        text << "\nsetup-independent obstruction: FOUND\n";
        text << "  bad point:  " << render_point_brief(ctx, bad_point) << ", prefix "
             << render_point_prefix(ctx, bad_point) << "\n";
        text << "  good point: " << render_point_brief(ctx, good_point) << ", prefix "
             << render_point_prefix(ctx, good_point) << "\n";
        text << "  h local state at both: " << human_local_text(ctx, bad_point) << "\n";
        text << "  p_bad (= " << ctx.lm.bad.formula.text()
             << ") true at the bad point, false at the good point\n";
        text << "  no sound-and-adequate setup exists for this design "
                "(setup-independent obstruction)\n";
        o["status"] = "found";
        o["bad_point"] = point_to_json(ctx, bad_point);
        o["good_point"] = point_to_json(ctx, good_point);
        o["human_local"] = human_local_text(ctx, bad_point);
        ok = false;
      } else {
        text << "\nsetup-independent obstruction: NONE\n";
        o["status"] = "none";
      }
      json["obstruction"] = std::move(o);
    }
  }

  text << "\nresult: " << (ok ? "PASS" : "FAIL") << "\n";
  json["result"] = ok ? "pass" : "fail";
  report.ok = ok;
  report.text = text.str();
  return report;
}

ImpossibleReport run_impossible(const ReportContext& ctx) {
  ImpossibleReport report;
  const ObstructionResult obstruction =
      adequacy_impossible(ctx.idx, ctx.lm.pi, ctx.lm.bad, ctx.lm.model.human_agent);
  std::ostringstream text;
  Json& json = report.json;
  json = Json::object();
  json["schema_version"] = 1;
  json["kind"] = "impossible";
  json["model"] = ctx.lm.model.name;
  json["horizon"] = ctx.rs.horizon;

  text << "model: " << ctx.lm.model.name << "\n";
  text << "horizon: " << ctx.rs.horizon << "\n";
  Json o = Json::object();
  if (obstruction.witness) {
    const auto& [bad_point, good_point] = *obstruction.witness;
    report.obstructed = true;
    text << "obstruction: FOUND\n";
    text << "  bad point:  " << render_point_brief(ctx, bad_point) << ", prefix "
         << render_point_prefix(ctx, bad_point) << "\n";
    text << "  good point: " << render_point_brief(ctx, good_point) << ", prefix "
         << render_point_prefix(ctx, good_point) << "\n";
    text << "  h local state at both: " << human_local_text(ctx, bad_point) << "\n";
    text << "  no sound-and-adequate setup exists for this design "
            "(setup-independent obstruction)\n";
    o["status"] = "found";
    o["bad_point"] = point_to_json(ctx, bad_point);
    o["good_point"] = point_to_json(ctx, good_point);
    o["human_local"] = human_local_text(ctx, bad_point);
  } else {
    text << "obstruction: NONE\n";
    text << "no indistinguishable bad/good point pair exists at this horizon\n";
    o["status"] = "none";
  }
  json["obstruction"] = std::move(o);
  report.text = text.str();
  return report;
}

std::string run_eval(const ReportContext& ctx, const EpistemicSystem* es, Point p,
                     const Formula& f, bool* value_out) {
  std::ostringstream out;
  out << "formula: " << f.text() << "\n";
  out << "point: " << render_point_brief(ctx, p) << "\n";

  // Indistinguishability classes consulted by K operators in the formula.
  std::set<std::string> k_agents;
  bool has_bknows = false;
  for (const Formula& sub : subformulas(f)) {
    if (sub.kind() == FormulaKind::Knows) k_agents.insert(sub.agent());
    if (sub.kind() == FormulaKind::BKnows) has_bknows = true;
  }
  for (const std::string& agent : k_agents) {
    const std::size_t idx = ctx.rs.agent_index(agent);
    const LocalState& mine = global_of(ctx.rs, p).parts[idx];
    const auto& cls = ctx.idx.group(idx, mine);
    out << "K[" << agent << "]: " << cls.size() << " indistinguishable point(s) from "
        << ctx.lm.model.render_local(mine) << "\n";
    for (std::uint32_t q : cls)
      out << "  - " << render_point_brief(ctx, ctx.idx.points()[q]) << "\n";
  }
  if (has_bknows) {
    if (es == nullptr)
      throw EvalError("formula uses Khat; pass --setup to pick the epistemic setup");
    const LocalState& l = global_of(ctx.rs, p).parts[es->human_agent()];
    const auto& theta = es->theta(l);
    out << "Khat: Theta at h local state " << ctx.lm.model.render_local(l) << " has "
        << theta.size() << " formula(s)\n";
    for (const Formula& g : theta) out << "  - " << g.text() << "\n";
  }

  const std::size_t ord = ctx.idx.ordinal(p);
  const bool value = es != nullptr ? eval_es_all(*es, f)[ord] != 0
                                   : eval_pw_all(ctx.idx, ctx.lm.pi, f)[ord] != 0;
  if (value_out != nullptr) *value_out = value;
  out << "value: " << (value ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace epimc
