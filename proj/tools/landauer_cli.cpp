// Command line front end: sweeps, figure presets, bound checks, spectrum
// inspection.  Exit codes: 0 ok, 1 config error, 2 numerical
// non-convergence (quadrature or mode-sum tail), 3 bound violation from
// `check`.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "landauer/kernels.hpp"
#include "landauer/sweep.hpp"

namespace {

using namespace landauer;

bool any_flag(const SweepResult& r, const std::string& token) {
  for (const SweepRow& row : r.rows)
    for (const std::string& f : row.flags)
      if (f == token) return true;
  return false;
}

void warn_node_position(const RunConfig& cfg) {
  if (cfg.trajectory.kind != Trajectory::Kind::at_rest || !cfg.gap.mode_index)
    return;
  int r = *cfg.gap.mode_index;
  double amp = std::abs(mode_function(r, cfg.trajectory.x0, cfg.cavity));
  if (amp < 1e-6)
    std::cerr << "warning: detector position is within |u| < 1e-6 of a node "
                 "of resonant mode "
              << r << "; the resonant response is suppressed\n";
}

int emit_result(const SweepResult& result, const RunConfig& cfg,
                const std::string& cli_format, const std::string& cli_out) {
  std::string format = !cli_format.empty()
                           ? cli_format
                           : cfg.output_format.value_or("csv");
  std::string path = !cli_out.empty() ? cli_out : cfg.output_path.value_or("");
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!path.empty()) {
    file.open(path);
    if (!file) {
      std::cerr << "error: cannot open output path: " << path << "\n";
      return 1;
    }
    out = &file;
  }
  if (format == "json")
    emit_json(result, *out);
  else
    emit_csv(result, *out);
  if (!path.empty() && !file.good()) {
    std::cerr << "error: write failed: " << path << "\n";
    return 1;
  }
  if (any_flag(result, "quad-unconverged") ||
      any_flag(result, "tail-unconverged")) {
    std::cerr << "note: sweep carries non-convergence flags (see the flags "
                 "column); exit 2\n";
    return 2;
  }
  return 0;
}

int run_command(const std::string& config_path, const std::string& format,
                const std::string& out_path) {
  RunConfig cfg = load_config_file(config_path);
  warn_node_position(cfg);
  SweepResult result = run_sweep(cfg);
  return emit_result(result, cfg, format, out_path);
}

int figure_command(const std::string& name, const std::string& format,
                   const std::string& out_path) {
  RunConfig cfg = figure_preset(name);
  warn_node_position(cfg);
  SweepResult result = run_sweep(cfg);
  return emit_result(result, cfg, format, out_path);
}

int check_command() {
  const char* names[] = {"fig1", "fig2", "fig4a", "fig4b"};
  bool violated = false;
  bool quad_trouble = false;
  for (const char* name : names) {
    RunConfig cfg = figure_preset(name);
    SweepResult result = run_sweep(cfg);
    double worst = 0.0;  // most negative residual margin
    bool bad = false;
    for (const SweepRow& row : result.rows) {
      double allow = 1e-12 + 1e-6 * std::fabs(row.heat);
      double margin = row.residual + allow;
      if (margin < worst) worst = margin;
      if (row.residual < -allow) bad = true;
    }
    if (bad) violated = true;
    if (any_flag(result, "quad-unconverged")) quad_trouble = true;
    std::cout << (bad ? "[FAIL] " : "[PASS] ") << name
              << ": bound margin " << worst << ", rows " << result.rows.size()
              << ", j_max " << result.cutoff.j_max
              << (result.cutoff.converged ? "" : " (tail unconverged at cap)")
              << "\n";
  }
  if (violated) return 3;
  if (quad_trouble) return 2;
  return 0;
}

int modes_command(const std::string& config_path) {
  RunConfig cfg = load_config_file(config_path);
  warn_node_position(cfg);
  CutoffResult cut = resolve_cutoff(cfg);
  std::vector<Mode> modes = build_modes(cfg.cavity, cut.j_max);
  double gap = cfg.resolved_gap();
  std::cout << "gap " << gap << " (mode "
            << cfg.resonant_index() << "), normalization 1/sqrt(omega*L)\n";
  bool thermal = cfg.field_kind == FieldState::Kind::thermal;
  FieldState field;
  if (thermal)
    field = FieldState::thermal(cfg.reservoir_temperature, modes);
  std::cout << "j,k,omega" << (thermal ? ",occupancy" : "") << "\n";
  for (const Mode& m : modes) {
    std::cout << m.index << ',' << m.k << ',' << m.omega;
    if (thermal) std::cout << ',' << field.occupancy[m.index - 1];
    std::cout << '\n';
  }
  std::cout << "cutoff j_max " << cut.j_max << ", "
            << (cut.converged ? "converged" : "tail unconverged at cap")
            << ", last octave change " << cut.last_change << "\n";
  return cut.converged ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cavity qubit entropy/heat sweeps"};
  app.require_subcommand(1);

  std::string kernels_opt;
  app.add_option("--kernels", kernels_opt,
                 "force the batch kernel backend (scalar|avx2)");

  auto* run = app.add_subcommand("run", "run a sweep from a JSON config");
  std::string config_path, run_format, run_out;
  run->add_option("--config", config_path, "JSON config path")->required();
  run->add_option("--format", run_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--out", run_out, "output path (default stdout)");

  auto* fig = app.add_subcommand("figure", "run a built-in sweep preset");
  std::string fig_name, fig_format, fig_out;
  fig->add_option("name", fig_name, "fig1|fig2|fig4a|fig4b")->required();
  fig->add_option("--format", fig_format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  fig->add_option("--out", fig_out, "output path (default stdout)");

  auto* chk = app.add_subcommand(
      "check", "verify the dissipation bound across the presets");
  (void)chk;

  auto* mod = app.add_subcommand("modes", "print the resolved mode table");
  std::string modes_config;
  mod->add_option("--config", modes_config, "JSON config path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (!kernels_opt.empty()) {
    landauer::kernels::Backend b;
    if (kernels_opt == "scalar")
      b = landauer::kernels::Backend::scalar;
    else if (kernels_opt == "avx2")
      b = landauer::kernels::Backend::avx2;
    else {
      std::cerr << "error: unknown kernel backend: " << kernels_opt << "\n";
      return 1;
    }
    if (!landauer::kernels::select(b)) {
      std::cerr << "error: kernel backend not available on this host: "
                << kernels_opt << "\n";
      return 1;
    }
  }

  try {
    if (app.got_subcommand("run")) return run_command(config_path, run_format, run_out);
    if (app.got_subcommand("figure"))
      return figure_command(fig_name, fig_format, fig_out);
    if (app.got_subcommand("check")) return check_command();
    if (app.got_subcommand("modes")) return modes_command(modes_config);
  } catch (const landauer::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
