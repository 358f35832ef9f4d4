#pragma once
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "landauer/thermo.hpp"

namespace landauer {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Detector level splitting, either pinned to a mode frequency or given
// outright.  Exactly one member is set.
struct GapSpec {
  std::optional<int> mode_index;
  std::optional<double> value;
};

struct TauGrid {
  double start = 0.0;
  double stop = 0.0;
  int count = 200;
};

struct RunConfig {
  CavityConfig cavity;
  Trajectory trajectory;
  double population = 0.0;  // excited-state probability
  GapSpec gap;
  FieldState::Kind field_kind = FieldState::Kind::vacuum;
  double reservoir_temperature = 0.0;  // thermal only
  double lambda = 0.01;
  TauGrid grid;
  QuadratureOptions quadrature;
  EntropyMethod entropy = EntropyMethod::linearized;
  std::optional<std::string> output_path;
  std::optional<std::string> output_format;

  void validate() const;
  double resolved_gap() const;
  // Mode index treated as resonant for the cutoff floor: the pinned index,
  // or the mode nearest the explicit gap.
  int resonant_index() const;
};

struct SweepRow {
  double tau = 0.0;
  double entropy_change = 0.0;
  double heat = 0.0;
  std::optional<double> heat_over_temperature;  // empty for vacuum
  double residual = 0.0;
  double population_shift = 0.0;
  int modes_used = 0;
  double max_quad_error = 0.0;
  std::vector<std::string> flags;  // sorted tokens
};

struct SweepResult {
  RunConfig config;  // grid post-clamp
  double gap = 0.0;  // resolved numeric splitting
  CutoffResult cutoff;
  bool clamped = false;
  std::string kernel_backend;
  std::vector<SweepRow> rows;
};

// Full tau sweep: resolves the mode cutoff at the final grid point, then
// evaluates every grid point against that spectrum.  Accelerated runs build
// each window integral incrementally, segment by segment along the grid.
// Per-point trouble (quadrature or tail non-convergence, perturbative-regime
// breach) lands in row flags; only malformed configs throw.
SweepResult run_sweep(const RunConfig& config);

// One window [0, tau] against an explicit cutoff.
LandauerReport evaluate_point(const RunConfig& config, double tau, int j_max);

// Cutoff resolution alone, at the (clamped) final grid point.
CutoffResult resolve_cutoff(const RunConfig& config);

// Built-in sweep presets: fig1, fig2, fig4a, fig4b.
RunConfig figure_preset(const std::string& name);

// Strict JSON config parsing: unknown keys anywhere are hard errors.
RunConfig load_config(std::istream& in);
RunConfig load_config_file(const std::string& path);

void emit_csv(const SweepResult& result, std::ostream& out);
void emit_json(const SweepResult& result, std::ostream& out);
std::vector<SweepRow> parse_csv(std::istream& in);
SweepResult parse_json(std::istream& in);

}  // namespace landauer
