#include "landauer/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace landauer {

namespace {

void common_diagnostics(LandauerReport& r, const ReducedCorrections& corr,
                        const ModeIntegrals& integrals) {
  r.modes_used = (int)integrals.modes.size();
  double worst = 0.0;
  for (double e : integrals.error) worst = std::max(worst, e);
  r.max_quad_error = worst;
  r.quad_converged = integrals.converged;
  r.perturbative_ok = corr.perturbative_ok;
  r.population_shift = corr.population_shift;
}

double entropy_total(const LandauerReport& r, const DetectorState& det,
                     const ReducedCorrections& corr, EntropyMethod method) {
  if (method == EntropyMethod::linearized) {
    double s = 0.0;
    for (double v : r.mode_entropy) s += v;
    return s;
  }
  return binary_entropy(det.p) - binary_entropy(det.p + corr.population_shift);
}

}  // namespace

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::domain_error("binary entropy needs p in [0, 1]");
  double s = 0.0;
  if (p > 0.0) s -= p * std::log(p);
  if (p < 1.0) s -= (1.0 - p) * std::log(1.0 - p);
  return s;
}

LandauerReport vacuum_entropy_and_heat(const DetectorState& det,
                                       const ReducedCorrections& corr,
                                       const ModeIntegrals& integrals,
                                       double lambda, EntropyMethod method) {
  det.validate();
  const double l2 = lambda * lambda;
  const double p = det.p;
  const double lg = std::log((1.0 - p) / p);
  const std::size_t n = integrals.modes.size();

  LandauerReport r;
  r.entropy_method = method;
  r.mode_entropy.resize(n);
  r.mode_heat.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double au = std::norm(integrals.up[j]);
    double ad = std::norm(integrals.down[j]);
    r.mode_entropy[j] = lg * l2 * (p * ad - (1.0 - p) * au);
    r.mode_heat[j] = l2 * (p * ad + (1.0 - p) * au) * integrals.modes[j].omega;
  }
  r.entropy_change = entropy_total(r, det, corr, method);
  double q = 0.0;
  for (double v : r.mode_heat) q += v;
  r.heat = q;
  r.heat_over_temperature = std::nullopt;
  r.reservoir_temperature = 0.0;
  r.residual = r.heat;
  common_diagnostics(r, corr, integrals);
  return r;
}

LandauerReport thermal_entropy_and_heat(const DetectorState& det,
                                        const FieldState& field,
                                        const ReducedCorrections& corr,
                                        const ModeIntegrals& integrals,
                                        double lambda, EntropyMethod method) {
  det.validate();
  if (field.kind != FieldState::Kind::thermal)
    throw std::invalid_argument("thermal_entropy_and_heat needs a thermal field");
  const std::size_t n = integrals.modes.size();
  if (field.occupancy.size() < n)
    throw std::invalid_argument("field state covers fewer modes than the integrals");

  const double l2 = lambda * lambda;
  const double p = det.p;
  const double lg = std::log((1.0 - p) / p);
  const double tr = field.temperature;

  LandauerReport r;
  r.entropy_method = method;
  r.mode_entropy.resize(n);
  r.mode_heat.resize(n);
  double heat_over_t = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double au = std::norm(integrals.up[j]);
    double ad = std::norm(integrals.down[j]);
    double nb = field.occupancy[j];
    double omega = integrals.modes[j].omega;
    double down_w = (nb + 1.0) * p - nb * (1.0 - p);
    double up_w = (nb + 1.0) * (1.0 - p) - nb * p;
    r.mode_entropy[j] = lg * l2 * (down_w * ad - up_w * au);
    r.mode_heat[j] = l2 * omega * (down_w * ad + up_w * au);
    // Log-occupancy weight ln((n+1)/n); for an underflowed occupancy the
    // limit omega/T_R is exact to double precision anyway.
    double logw = nb > 0.0 ? std::log1p(1.0 / nb) : omega / tr;
    heat_over_t += l2 * logw * (down_w * ad + up_w * au);
  }
  r.entropy_change = entropy_total(r, det, corr, method);
  double q = 0.0;
  for (double v : r.mode_heat) q += v;
  r.heat = q;
  r.heat_over_temperature = heat_over_t;
  r.reservoir_temperature = tr;
  r.residual = r.heat - tr * r.entropy_change;
  common_diagnostics(r, corr, integrals);
  return r;
}

double landauer_residual(const LandauerReport& report) {
  return report.heat - report.reservoir_temperature * report.entropy_change;
}

double effective_detector_temperature(double p, double gap) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("population must lie strictly in (0, 1)");
  if (!(gap > 0.0) || !std::isfinite(gap))
    throw std::invalid_argument("gap must be positive and finite");
  return gap / std::log((1.0 - p) / p);
}

bool sign_condition(const DetectorState& det, const FieldState& field, int j) {
  det.validate();
  if (field.kind != FieldState::Kind::thermal)
    throw std::invalid_argument("sign condition is defined against a thermal field");
  if (j < 1 || (std::size_t)j > field.omega.size())
    throw std::invalid_argument("mode index outside the field state");
  return field.omega[j - 1] / field.temperature >
         std::log((1.0 - det.p) / det.p);
}

}  // namespace landauer
