#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "towerplan/error.hpp"
#include "towerplan/pipeline.hpp"
#include "towerplan/report.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitUncovered = 3;

struct Options {
  std::string config;
  std::string raster;
  std::string objects;
  std::string out;
  std::string svg;
  std::optional<double> minsup;
  std::optional<double> minconf;
  std::optional<int> threshold;
  std::optional<double> cell_side;
  std::optional<double> radius;
  std::optional<double> square_side;
  std::optional<int> jobs;
  bool fail_on_uncovered = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--raster", o.raster, "ESRI ASCII grid of the area");
  cmd->add_option("--objects", o.objects, "JSON array of spatial objects");
  cmd->add_option("--out", o.out, "output file (default: stdout)");
  cmd->add_option("--minsup", o.minsup, "minimum support in (0, 1]");
  cmd->add_option("--minconf", o.minconf, "minimum confidence in (0, 1]");
  cmd->add_option("--threshold", o.threshold, "goodness percent a single square must reach");
  cmd->add_option("--cell-side", o.cell_side, "external grid cell side in meters");
  cmd->add_option("--radius", o.radius, "antenna coverage radius in meters");
  cmd->add_option("--square-side", o.square_side, "override the internal square side in meters");
  cmd->add_option("--jobs", o.jobs, "worker threads (fallback: TOWERPLAN_JOBS)")->check(CLI::PositiveNumber);
}

towerplan::PlanConfig resolve_config(const Options& o) {
  towerplan::PlanConfig cfg;
  if (!o.config.empty()) cfg = towerplan::load_config(o.config);
  if (!o.raster.empty()) {
    cfg.raster = o.raster;
    cfg.raster_path = o.raster;
  }
  if (!o.objects.empty()) {
    cfg.objects = o.objects;
    cfg.objects_path = o.objects;
  }
  if (o.minsup) cfg.minsup = *o.minsup;
  if (o.minconf) cfg.minconf = *o.minconf;
  if (o.threshold) cfg.threshold = *o.threshold;
  if (o.cell_side) cfg.cell_side_m = *o.cell_side;
  if (o.radius) cfg.antenna_radius_m = *o.radius;
  if (o.square_side) cfg.square_side_m = *o.square_side;
  if (!o.out.empty()) cfg.out_path = o.out;
  if (!o.svg.empty()) cfg.svg_path = o.svg;
  if (cfg.raster.empty()) throw towerplan::ConfigError("no raster given (--raster or config \"raster\")");
  return cfg;
}

int resolve_jobs(const Options& o, const towerplan::PlanConfig& cfg) {
  if (o.jobs) return *o.jobs;
  if (const char* env = std::getenv("TOWERPLAN_JOBS"); env && *env) {
    try {
      const int j = std::stoi(env);
      if (j >= 1) return j;
    } catch (const std::exception&) {
    }
    throw towerplan::ConfigError(std::string("TOWERPLAN_JOBS must be a positive integer, got '") + env + "'");
  }
  if (cfg.jobs) return *cfg.jobs;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void emit(const std::optional<std::filesystem::path>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw towerplan::Error("cannot write " + path->string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Antenna placement planner over a gridded area"};
  app.require_subcommand(1);

  Options opts;
  auto* plan_cmd = app.add_subcommand("plan", "run the full pipeline and write the placement report");
  auto* mine_cmd = app.add_subcommand("mine", "write the association rules mined per square");
  auto* classify_cmd = app.add_subcommand("classify", "write the priority class of every square");
  auto* render_cmd = app.add_subcommand("render", "run the pipeline and write an SVG map");
  for (auto* cmd : {plan_cmd, mine_cmd, classify_cmd, render_cmd}) add_common(cmd, opts);
  plan_cmd->add_option("--svg", opts.svg, "also write an SVG map here");
  render_cmd->add_option("--svg", opts.svg, "SVG output file (default: --out or stdout)");
  plan_cmd->add_flag("--fail-on-uncovered", opts.fail_on_uncovered, "exit 3 if any cell is not fully covered");

  CLI11_PARSE(app, argc, argv);

  try {
    towerplan::PlanConfig cfg = resolve_config(opts);
    const int jobs = resolve_jobs(opts, cfg);

    if (classify_cmd->parsed()) {
      const auto result = towerplan::plan(cfg, towerplan::Depth::Classify, jobs);
      emit(cfg.out_path, towerplan::dump(towerplan::classify_document(result)));
      return 0;
    }
    if (mine_cmd->parsed()) {
      const auto result = towerplan::plan(cfg, towerplan::Depth::Mine, jobs);
      emit(cfg.out_path, towerplan::dump(towerplan::mine_document(result)));
      return 0;
    }

    const auto result = towerplan::plan(cfg, towerplan::Depth::Full, jobs);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";

    if (render_cmd->parsed()) {
      emit(cfg.svg_path ? cfg.svg_path : cfg.out_path, towerplan::render_svg(result));
      return 0;
    }

    emit(cfg.out_path, towerplan::dump(towerplan::plan_report(result)));
    if (cfg.svg_path) emit(cfg.svg_path, towerplan::render_svg(result));
    if (opts.fail_on_uncovered && !result.coverage->full()) {
      std::cerr << "coverage: " << result.coverage->deficient_cells().size() << " cell(s) below full coverage\n";
      return kExitUncovered;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
