#pragma once

#include <string>

#include <json.hpp>

#include "epimc/analysis.hpp"
#include "epimc/model_io.hpp"

namespace epimc {

// Rendering context shared by the check/impossible/eval reports.
struct ReportContext {
  const LoadedModel& lm;
  const RunSet& rs;
  const PointIndex& idx;
};

std::string render_point_brief(const ReportContext& ctx, Point p);   // "run 3, time 3, state g5"
std::string render_point_prefix(const ReportContext& ctx, Point p);  // "g0 -> g1 -> g4 -> g5"
nlohmann::ordered_json point_to_json(const ReportContext& ctx, Point p);

struct CheckRequest {
  bool soundness = false;
  bool adequacy = false;
};

struct CheckReport {
  bool ok = false;
  std::string text;
  nlohmann::ordered_json json;
};

// Runs the requested analyses for one setup and renders both report forms.
// Adequacy additionally runs the setup-independent obstruction search.
CheckReport run_check(const ReportContext& ctx, const EpistemicSetup& setup,
                      const CheckRequest& request);

struct ImpossibleReport {
  bool obstructed = false;
  std::string text;
  nlohmann::ordered_json json;
};

ImpossibleReport run_impossible(const ReportContext& ctx);

// Evaluates one formula at one point and shows the epistemic context used:
// the indistinguishability classes consulted by each K agent and, when the
// formula mentions Khat, the Theta set at the human's local state.
std::string run_eval(const ReportContext& ctx, const EpistemicSystem* es, Point p,
                     const Formula& f, bool* value_out);

}  // namespace epimc
