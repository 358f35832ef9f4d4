#include "landauer/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "landauer/kernels.hpp"

namespace landauer {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> make_grid(const TauGrid& g) {
  std::vector<double> tau((std::size_t)g.count);
  if (g.count == 1) {
    tau[0] = g.start;
    return tau;
  }
  double step = (g.stop - g.start) / (g.count - 1);
  for (int i = 0; i < g.count; ++i) tau[(std::size_t)i] = g.start + step * i;
  tau.back() = g.stop;
  return tau;
}

// Cumulative window integrals for every grid point.  Modes fill lazily so
// the cutoff ladder only pays for the octaves it actually visits; on the
// accelerated branch each mode walks the grid once, adding one quadrature
// segment per step with a tolerance budget split across segments.
class SweepEngine {
 public:
  SweepEngine(const RunConfig& cfg, std::vector<double> grid)
      : cfg_(cfg), grid_(std::move(grid)), gap_(cfg.resolved_gap()) {
    nonempty_segments_ = 0;
    double prev = 0.0;
    for (double t : grid_) {
      if (t > prev) ++nonempty_segments_;
      prev = t;
    }
  }

  CutoffResult resolve() {
    CutoffResult cut =
        effective_cutoff(cfg_.cavity, cfg_.resonant_index(),
                         [this](int j_hi) { return aggregates(j_hi); });
    // The ladder search short-circuits when its floor already sits at the
    // cap; the store must still cover every mode the sweep will read.
    ensure(cut.j_max);
    return cut;
  }

  void ensure(int j_hi) {
    const std::size_t k_count = grid_.size();
    const bool rest = cfg_.trajectory.kind == Trajectory::Kind::at_rest;
    const double tol = cfg_.quadrature.tolerance;
    const double tol_seg = tol / std::max(1, nonempty_segments_);
    for (int j = filled_ + 1; j <= j_hi; ++j) {
      Mode m = make_mode(j, cfg_.cavity);
      modes_.push_back(m);
      std::vector<std::complex<double>> up(k_count), down(k_count);
      std::vector<double> err(k_count, 0.0);
      if (rest) {
        for (std::size_t k = 0; k < k_count; ++k) {
          up[k] = static_response(Channel::up, m, cfg_.cavity,
                                  cfg_.trajectory.x0, gap_, grid_[k]);
          down[k] = static_response(Channel::down, m, cfg_.cavity,
                                    cfg_.trajectory.x0, gap_, grid_[k]);
        }
        method_.push_back(Method::closed_form);
      } else {
        std::complex<double> iu{0.0, 0.0}, id{0.0, 0.0};
        double eu = 0.0, ed = 0.0;
        long used = 0;
        double prev = 0.0;
        for (std::size_t k = 0; k < k_count; ++k) {
          if (grid_[k] > prev) {
            long budget = cfg_.quadrature.panel_cap - used;
            if (budget < 1) {
              eu = ed = std::numeric_limits<double>::infinity();
            } else {
              SegmentIntegral seg =
                  integrate_segment(m, cfg_.cavity, cfg_.trajectory, gap_,
                                    prev, grid_[k], tol_seg, budget);
              iu += seg.up;
              id += seg.down;
              eu += seg.error_up;
              ed += seg.error_down;
              used += seg.panels;
            }
            prev = grid_[k];
          }
          up[k] = iu;
          down[k] = id;
          err[k] = std::max(eu, ed);
        }
        method_.push_back(Method::quadrature);
      }
      up_.push_back(std::move(up));
      down_.push_back(std::move(down));
      err_.push_back(std::move(err));
      filled_ = j;
    }
  }

  ModeIntegrals slice(int j_hi, std::size_t k) const {
    ModeIntegrals mi;
    mi.gap = gap_;
    mi.modes.assign(modes_.begin(), modes_.begin() + j_hi);
    mi.up.resize((std::size_t)j_hi);
    mi.down.resize((std::size_t)j_hi);
    mi.error.resize((std::size_t)j_hi);
    mi.method.resize((std::size_t)j_hi);
    for (int j = 0; j < j_hi; ++j) {
      mi.up[(std::size_t)j] = up_[(std::size_t)j][k];
      mi.down[(std::size_t)j] = down_[(std::size_t)j][k];
      mi.error[(std::size_t)j] = err_[(std::size_t)j][k];
      mi.method[(std::size_t)j] = method_[(std::size_t)j];
      if (mi.error[(std::size_t)j] > cfg_.quadrature.tolerance)
        mi.converged = false;
    }
    return mi;
  }

  LandauerReport report_for(const ModeIntegrals& mi) const {
    DetectorState det{cfg_.population, gap_};
    if (cfg_.field_kind == FieldState::Kind::vacuum) {
      ReducedCorrections corr = vacuum_corrections(det, mi, cfg_.lambda);
      return vacuum_entropy_and_heat(det, corr, mi, cfg_.lambda, cfg_.entropy);
    }
    FieldState field =
        FieldState::thermal(cfg_.reservoir_temperature, mi.modes);
    ReducedCorrections corr = thermal_corrections(det, field, mi, cfg_.lambda);
    return thermal_entropy_and_heat(det, field, corr, mi, cfg_.lambda,
                                    cfg_.entropy);
  }

  std::vector<double> aggregates(int j_hi) {
    ensure(j_hi);
    LandauerReport r = report_for(slice(j_hi, grid_.size() - 1));
    return {r.entropy_change, r.heat};
  }

  const std::vector<double>& grid() const { return grid_; }

 private:
  const RunConfig& cfg_;
  std::vector<double> grid_;
  double gap_;
  int nonempty_segments_ = 0;
  std::vector<Mode> modes_;
  std::vector<std::vector<std::complex<double>>> up_, down_;
  std::vector<std::vector<double>> err_;
  std::vector<Method> method_;
  int filled_ = 0;
};

LandauerReport point_report(const RunConfig& cfg, const ModeIntegrals& mi) {
  DetectorState det{cfg.population, cfg.resolved_gap()};
  if (cfg.field_kind == FieldState::Kind::vacuum) {
    ReducedCorrections corr = vacuum_corrections(det, mi, cfg.lambda);
    return vacuum_entropy_and_heat(det, corr, mi, cfg.lambda, cfg.entropy);
  }
  FieldState field = FieldState::thermal(cfg.reservoir_temperature, mi.modes);
  ReducedCorrections corr = thermal_corrections(det, field, mi, cfg.lambda);
  return thermal_entropy_and_heat(det, field, corr, mi, cfg.lambda, cfg.entropy);
}

TauGrid clamp_grid(const RunConfig& cfg, bool& clamped) {
  TauGrid g = cfg.grid;
  double tmax = max_proper_time(cfg.trajectory, cfg.cavity);
  if (g.stop > tmax) {
    g.stop = tmax;
    clamped = true;
  }
  if (g.start > g.stop)
    throw config_error("grid start lies past the reachable stop");
  if (g.count > 1 && !(g.start < g.stop))
    throw config_error("grid is not strictly increasing");
  return g;
}

}  // namespace

void RunConfig::validate() const {
  cavity.validate();
  trajectory.validate(cavity);
  if (!(population > 0.0) || !(population < 1.0))
    throw config_error("detector population must lie strictly in (0, 1)");
  if (gap.mode_index.has_value() == gap.value.has_value())
    throw config_error("specify exactly one of gap mode index and explicit gap");
  if (gap.mode_index) {
    if (*gap.mode_index < 1 || *gap.mode_index > cavity.mode_cap)
      throw config_error("gap mode index outside [1, mode_cap]");
  } else if (!(*gap.value > 0.0) || !std::isfinite(*gap.value)) {
    throw config_error("explicit gap must be positive and finite");
  }
  if (field_kind == FieldState::Kind::thermal &&
      (!(reservoir_temperature > 0.0) || !std::isfinite(reservoir_temperature)))
    throw config_error("thermal reservoir temperature must be positive and finite");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw config_error("coupling lambda must be positive and finite");
  if (grid.count < 1) throw config_error("grid count must be >= 1");
  if (!(grid.start >= 0.0) || !std::isfinite(grid.start))
    throw config_error("grid start must be >= 0 and finite");
  if (!(grid.stop >= grid.start) || !std::isfinite(grid.stop))
    throw config_error("grid stop must be finite and >= start");
  quadrature.validate();
  if (output_format && *output_format != "csv" && *output_format != "json")
    throw config_error("output format must be csv or json");
}

double RunConfig::resolved_gap() const {
  if (gap.mode_index) return mode_frequency(*gap.mode_index, cavity);
  return *gap.value;
}

int RunConfig::resonant_index() const {
  if (gap.mode_index) return *gap.mode_index;
  double omega = *gap.value;
  int r;
  if (cavity.boundary == Boundary::dirichlet) {
    r = (int)std::lround(omega * cavity.length / kPi);
  } else {
    int n = (int)std::lround(omega * cavity.length / (2.0 * kPi));
    r = 2 * std::max(1, n) - 1;
  }
  return std::clamp(r, 1, cavity.mode_cap);
}

SweepResult run_sweep(const RunConfig& config) {
  config.validate();
  SweepResult out;
  out.config = config;
  out.gap = config.resolved_gap();
  out.config.grid = clamp_grid(config, out.clamped);
  out.kernel_backend = std::string(kernels::name(kernels::active()));

  SweepEngine engine(out.config, make_grid(out.config.grid));
  out.cutoff = engine.resolve();

  const std::vector<double>& grid = engine.grid();
  out.rows.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    ModeIntegrals mi = engine.slice(out.cutoff.j_max, k);
    LandauerReport rep = engine.report_for(mi);
    SweepRow row;
    row.tau = grid[k];
    row.entropy_change = rep.entropy_change;
    row.heat = rep.heat;
    row.heat_over_temperature = rep.heat_over_temperature;
    row.residual = rep.residual;
    row.population_shift = rep.population_shift;
    row.modes_used = rep.modes_used;
    row.max_quad_error = rep.max_quad_error;
    if (out.clamped) row.flags.push_back("clamped");
    if (!rep.perturbative_ok) row.flags.push_back("perturbative-regime");
    if (!rep.quad_converged) row.flags.push_back("quad-unconverged");
    if (!out.cutoff.converged) row.flags.push_back("tail-unconverged");
    std::sort(row.flags.begin(), row.flags.end());
    out.rows.push_back(std::move(row));
  }
  return out;
}

LandauerReport evaluate_point(const RunConfig& config, double tau, int j_max) {
  config.validate();
  ModeIntegrals mi = compute_all(config.cavity, config.trajectory,
                                 config.resolved_gap(), tau, j_max,
                                 config.quadrature);
  return point_report(config, mi);
}

CutoffResult resolve_cutoff(const RunConfig& config) {
  config.validate();
  bool clamped = false;
  RunConfig cfg = config;
  cfg.grid = clamp_grid(config, clamped);
  cfg.grid.start = cfg.grid.stop;
  cfg.grid.count = 1;
  SweepEngine engine(cfg, make_grid(cfg.grid));
  return engine.resolve();
}

RunConfig figure_preset(const std::string& name) {
  RunConfig cfg;
  cfg.population = 0.05;
  cfg.lambda = 0.01;
  cfg.grid.count = 200;
  if (name == "fig1") {
    cfg.cavity.length = 1.56789;
    cfg.trajectory = Trajectory::at_rest(0.212345);
    cfg.gap.mode_index = 10;
    cfg.grid.stop = 2.0;
  } else if (name == "fig2") {
    cfg.cavity.length = 3.0;
    cfg.trajectory = Trajectory::accelerated(50.0);
    cfg.gap.mode_index = 15;
    cfg.grid.stop = max_proper_time(cfg.trajectory, cfg.cavity);
  } else if (name == "fig4a" || name == "fig4b") {
    cfg.cavity.length = 1.234;
    cfg.trajectory = Trajectory::at_rest(0.52345);
    cfg.gap.mode_index = 15;
    cfg.field_kind = FieldState::Kind::thermal;
    cfg.reservoir_temperature = (name == "fig4a") ? 1.0 : 100.0;
    cfg.grid.stop = 2.0;
  } else {
    throw config_error("unknown figure preset: " + name);
  }
  return cfg;
}

}  // namespace landauer
