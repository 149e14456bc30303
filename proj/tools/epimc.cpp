#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "epimc/analysis.hpp"
#include "epimc/dot.hpp"
#include "epimc/errors.hpp"
#include "epimc/model_io.hpp"
#include "epimc/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Loaded {
  epimc::LoadedModel lm;
  epimc::RunSet rs;
};

Loaded load_and_enumerate(const std::string& path, std::optional<std::uint32_t> horizon,
                          bool quiet_warnings) {
  Loaded out{epimc::load_model(path), {}};
  const std::uint32_t h = horizon.value_or(out.lm.default_horizon);
  out.rs = epimc::enumerate_runs(out.lm.model, h);
  for (const std::string& w : epimc::validate_reachability(out.lm, out.rs))
    out.lm.warnings.push_back(w);
  if (!quiet_warnings)
    for (const std::string& w : out.lm.warnings) std::cerr << "warning: " << w << "\n";
  return out;
}

void write_output(const std::string& content, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw epimc::ModelError("cannot write to '" + out_path + "'");
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"epistemic soundness/adequacy checking for human-automation system models"};
  app.require_subcommand(1);
  argv = app.ensure_utf8(argv);

  std::string model_path;
  std::optional<std::uint32_t> horizon;
  bool as_json = false;
  std::string setup_name;

  auto add_common = [&](CLI::App* cmd, bool with_setup, bool with_json) {
    cmd->add_option("model", model_path, "model document (JSON)")->required();
    cmd->add_option("--horizon", horizon, "run length bound (defaults to the model's)")
        ->check(CLI::Range(1, 1000000));
    if (with_setup) cmd->add_option("--setup", setup_name, "named epistemic setup to use");
    if (with_json) cmd->add_flag("--json", as_json, "emit a machine-readable verdict");
  };

  // check
  bool want_soundness = false;
  bool want_adequacy = false;
  CLI::App* check = app.add_subcommand("check", "decide soundness and/or adequacy of a setup");
  add_common(check, true, true);
  check->add_flag("--soundness", want_soundness, "check the two soundness clauses");
  check->add_flag("--adequacy", want_adequacy,
                  "check adequacy (includes soundness and the obstruction search)");

  // eval
  std::uint32_t eval_run = 0;
  std::uint32_t eval_time = 0;
  std::string eval_formula;
  CLI::App* eval = app.add_subcommand("eval", "evaluate a formula at a point");
  add_common(eval, true, false);
  eval->add_option("--run", eval_run, "run index")->required();
  eval->add_option("--time", eval_time, "time within the run")->required();
  eval->add_option("--formula", eval_formula, "formula text")->required();

  // runs
  bool runs_count_only = false;
  CLI::App* runs_cmd = app.add_subcommand("runs", "enumerate the bounded run set");
  add_common(runs_cmd, false, false);
  runs_cmd->add_flag("--count", runs_count_only, "print only the number of runs");

  // synth
  std::string synth_name = "synthesized";
  std::string synth_from;
  std::string synth_out;
  CLI::App* synth = app.add_subcommand(
      "synth", "synthesize the maximal sound setup and save it into a new model file");
  add_common(synth, false, false);
  synth->add_option("--name", synth_name, "name for the synthesized setup");
  synth->add_option("--from-setup", synth_from,
                    "reuse this setup's deductions (those failing clause 2 are dropped)");
  synth->add_option("--out", synth_out, "output model file")->required();

  // impossible
  CLI::App* impossible = app.add_subcommand(
      "impossible", "search for a setup-independent adequacy obstruction");
  add_common(impossible, false, true);

  // export-dot
  std::string dot_out = "-";
  CLI::App* export_dot_cmd =
      app.add_subcommand("export-dot", "write the reachable-state graph in DOT form");
  add_common(export_dot_cmd, false, false);
  export_dot_cmd->add_option("--out,-o", dot_out, "output file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (check->parsed()) {
      if (!want_soundness && !want_adequacy) want_soundness = want_adequacy = true;
      if (setup_name.empty()) {
        std::cerr << "error: check needs --setup NAME\n";
        return kExitUsage;
      }
      Loaded loaded = load_and_enumerate(model_path, horizon, as_json);
      const epimc::PointIndex idx(loaded.rs);
      const epimc::ReportContext ctx{loaded.lm, loaded.rs, idx};
      const epimc::CheckReport report =
          epimc::run_check(ctx, loaded.lm.setup(setup_name),
                           epimc::CheckRequest{want_soundness, want_adequacy});
      if (as_json)
        std::cout << report.json.dump(2) << "\n";
      else
        std::cout << report.text;
      return report.ok ? kExitPass : kExitFail;
    }

    if (eval->parsed()) {
      Loaded loaded = load_and_enumerate(model_path, horizon, false);
      const epimc::PointIndex idx(loaded.rs);
      const epimc::ReportContext ctx{loaded.lm, loaded.rs, idx};
      epimc::Formula f = epimc::parse_formula(eval_formula);
      // "p_bad" is shorthand for the model's bad-state condition unless the
      // model declares a proposition of that name.
      const bool has_pbad_prop = std::any_of(
          loaded.lm.model.propositions.begin(), loaded.lm.model.propositions.end(),
          [](const epimc::Proposition& p) { return p.name == "p_bad"; });
      if (!has_pbad_prop) f = epimc::substitute(f, "p_bad", loaded.lm.bad.formula);
      if (eval_run >= loaded.rs.runs.size()) {
        std::cerr << "error: run index " << eval_run << " out of range (have "
                  << loaded.rs.runs.size() << " runs)\n";
        return kExitUsage;
      }
      const epimc::Point p =
          epimc::normalize_point(loaded.rs, epimc::Point{eval_run, eval_time});
      std::optional<epimc::EpistemicSystem> es;
      if (!setup_name.empty())
        es.emplace(idx, loaded.lm.pi, loaded.lm.setup(setup_name),
                   loaded.lm.model.human_agent);
      std::cout << epimc::run_eval(ctx, es ? &*es : nullptr, p, f, nullptr);
      return kExitPass;
    }

    if (runs_cmd->parsed()) {
      Loaded loaded = load_and_enumerate(model_path, horizon, false);
      if (runs_count_only) {
        std::cout << loaded.rs.runs.size() << "\n";
        return kExitPass;
      }
      for (std::size_t r = 0; r < loaded.rs.runs.size(); ++r) {
        const epimc::Run& run = loaded.rs.runs[r];
        std::cout << "run " << r << ":";
        for (const epimc::GlobalState& g : run.states)
          std::cout << " " << loaded.lm.model.state_name(g);
        if (run.absorbing) std::cout << " [absorbing]";
        std::cout << "\n  actions:";
        for (const epimc::JointAction& ja : run.actions)
          std::cout << " " << loaded.lm.model.render_action(ja);
        std::cout << "\n";
      }
      return kExitPass;
    }

    if (synth->parsed()) {
      Loaded loaded = load_and_enumerate(model_path, horizon, false);
      const epimc::PointIndex idx(loaded.rs);
      epimc::DeductionSet deductions;
      if (!synth_from.empty()) deductions = loaded.lm.setup(synth_from).deductions;
      epimc::SynthesisResult result = epimc::synthesize_max_sound_setup(
          idx, loaded.lm.pi, std::move(deductions), loaded.lm.model.human_agent, synth_name);
      for (const std::string& d : result.dropped)
        std::cout << "dropped deduction: " << d << "\n";
      if (loaded.lm.has_setup(synth_name)) {
        std::cerr << "error: model already has a setup named '" << synth_name << "'\n";
        return kExitUsage;
      }
      loaded.lm.setups.push_back(std::move(result.setup));
      write_output(epimc::save_model(loaded.lm), synth_out);
      std::cout << "wrote setup '" << synth_name << "' to " << synth_out << "\n";
      return kExitPass;
    }

    if (impossible->parsed()) {
      Loaded loaded = load_and_enumerate(model_path, horizon, as_json);
      const epimc::PointIndex idx(loaded.rs);
      const epimc::ReportContext ctx{loaded.lm, loaded.rs, idx};
      const epimc::ImpossibleReport report = epimc::run_impossible(ctx);
      if (as_json)
        std::cout << report.json.dump(2) << "\n";
      else
        std::cout << report.text;
      return report.obstructed ? kExitFail : kExitPass;
    }

    if (export_dot_cmd->parsed()) {
      Loaded loaded = load_and_enumerate(model_path, horizon, false);
      write_output(epimc::export_dot(loaded.lm, loaded.rs), dot_out);
      return kExitPass;
    }
  } catch (const epimc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const epimc::ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const epimc::EvalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
