#include "landauer/perturbation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace landauer {

void DetectorState::validate() const {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("detector population must lie strictly in (0, 1)");
  if (!(gap > 0.0) || !std::isfinite(gap))
    throw std::invalid_argument("detector gap must be positive and finite");
}

FieldState FieldState::vacuum() { return FieldState{}; }

FieldState FieldState::thermal(double temperature, const std::vector<Mode>& modes) {
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw std::invalid_argument("reservoir temperature must be positive and finite");
  FieldState f;
  f.kind = Kind::thermal;
  f.temperature = temperature;
  f.omega.reserve(modes.size());
  f.occupancy.reserve(modes.size());
  for (const Mode& m : modes) {
    f.omega.push_back(m.omega);
    f.occupancy.push_back(mean_occupancy(m.omega, temperature));
  }
  return f;
}

double mean_occupancy(double omega, double temperature) {
  if (!(omega > 0.0)) throw std::invalid_argument("mode frequency must be positive");
  if (!(temperature > 0.0))
    throw std::invalid_argument("temperature must be positive");
  return 1.0 / std::expm1(omega / temperature);
}

ReducedCorrections vacuum_corrections(const DetectorState& det,
                                      const ModeIntegrals& integrals,
                                      double lambda) {
  det.validate();
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("coupling lambda must be positive and finite");

  const double l2 = lambda * lambda;
  const double p = det.p;
  const std::size_t n = integrals.modes.size();

  ReducedCorrections out;
  out.raising.resize(n);
  double shift = 0.0, added = 0.0, sum_up = 0.0, sum_down = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double au = std::norm(integrals.up[j]);
    double ad = std::norm(integrals.down[j]);
    out.raising[j] = l2 * (p * ad + (1.0 - p) * au);
    added += out.raising[j];
    sum_up += au;
    sum_down += ad;
    shift += (1.0 - p) * au - p * ad;
  }
  out.population_shift = l2 * shift;
  out.probability_added = added;
  out.probability_removed = l2 * (p * sum_down + (1.0 - p) * sum_up);
  out.perturbative_ok =
      std::fabs(out.population_shift) <= 0.1 * std::min(p, 1.0 - p);
  return out;
}

ReducedCorrections thermal_corrections(const DetectorState& det,
                                       const FieldState& field,
                                       const ModeIntegrals& integrals,
                                       double lambda) {
  det.validate();
  if (field.kind != FieldState::Kind::thermal)
    throw std::invalid_argument("thermal_corrections needs a thermal field state");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("coupling lambda must be positive and finite");
  const std::size_t n = integrals.modes.size();
  if (field.occupancy.size() < n)
    throw std::invalid_argument("field state covers fewer modes than the integrals");

  const double l2 = lambda * lambda;
  const double p = det.p;

  ReducedCorrections out;
  out.raising.resize(n);
  out.lowering.resize(n);
  double shift = 0.0, added = 0.0;
  double s_n_up = 0.0, s_n_down = 0.0, s_n1_up = 0.0, s_n1_down = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double au = std::norm(integrals.up[j]);
    double ad = std::norm(integrals.down[j]);
    double nb = field.occupancy[j];
    out.raising[j] = l2 * (nb + 1.0) * ((1.0 - p) * au + p * ad);
    out.lowering[j] = l2 * nb * ((1.0 - p) * ad + p * au);
    added += out.raising[j] + out.lowering[j];
    s_n_up += nb * au;
    s_n_down += nb * ad;
    s_n1_up += (nb + 1.0) * au;
    s_n1_down += (nb + 1.0) * ad;
    shift += (1.0 - p) * ((nb + 1.0) * au + nb * ad) -
             p * ((nb + 1.0) * ad + nb * au);
  }
  out.population_shift = l2 * shift;
  out.probability_added = added;
  out.probability_removed =
      l2 * ((1.0 - p) * (s_n_down + s_n1_up) + p * (s_n_up + s_n1_down));
  out.perturbative_ok =
      std::fabs(out.population_shift) <= 0.1 * std::min(p, 1.0 - p);
  return out;
}

double check_trace(const ReducedCorrections& corr) {
  return corr.probability_added - corr.probability_removed;
}

std::vector<int> reachable_occupations(int n_j, int order) {
  if (n_j < 0) throw std::invalid_argument("occupation number must be >= 0");
  if (order < 0) throw std::invalid_argument("perturbative order must be >= 0");
  std::vector<int> out;
  for (int s = std::max(0, n_j - order); s <= n_j + order; ++s) out.push_back(s);
  return out;
}

}  // namespace landauer
