#include "landauer/modes.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace landauer {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDomainSlack = 1e-12;
constexpr double kChangeFloor = 1e-30;

void check_index(int j, const CavityConfig& cavity) {
  if (j < 1) throw std::invalid_argument("mode index must be >= 1, got " + std::to_string(j));
  if (j > cavity.mode_cap)
    throw std::invalid_argument("mode index " + std::to_string(j) +
                                " exceeds hard cap " + std::to_string(cavity.mode_cap));
}

}  // namespace

void CavityConfig::validate() const {
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("cavity length must be positive and finite");
  if (mode_cap < 1) throw std::invalid_argument("mode_cap must be >= 1");
  if (!(tail_tolerance > 0.0) || tail_tolerance > 1.0)
    throw std::invalid_argument("tail_tolerance must lie in (0, 1]");
}

double sin_pi(double t) {
  double n = std::nearbyint(t);
  double f = t - n;  // f in [-1/2, 1/2], exact
  double s = std::sin(kPi * f);
  if (std::fmod(n, 2.0) != 0.0) s = -s;
  return s;
}

double mode_frequency(int j, const CavityConfig& cavity) {
  check_index(j, cavity);
  if (cavity.boundary == Boundary::dirichlet) return j * kPi / cavity.length;
  int n = (j + 1) / 2;  // (2n-1, 2n) pair
  return 2.0 * n * kPi / cavity.length;
}

Mode make_mode(int j, const CavityConfig& cavity) {
  double omega = mode_frequency(j, cavity);
  double k;
  if (cavity.boundary == Boundary::dirichlet) {
    k = omega;
  } else {
    k = (j % 2 == 1) ? omega : -omega;
  }
  return Mode{j, k, omega, 1.0 / std::sqrt(omega * cavity.length)};
}

std::vector<Mode> build_modes(const CavityConfig& cavity, int j_max) {
  check_index(j_max, cavity);
  std::vector<Mode> modes;
  modes.reserve(j_max);
  for (int j = 1; j <= j_max; ++j) modes.push_back(make_mode(j, cavity));
  return modes;
}

std::complex<double> mode_function(int j, double x, const CavityConfig& cavity) {
  Mode m = make_mode(j, cavity);
  double slack = kDomainSlack * cavity.length;
  if (x < -slack || x > cavity.length + slack)
    throw std::domain_error("position " + std::to_string(x) + " outside cavity [0, " +
                            std::to_string(cavity.length) + "]");
  x = std::fmin(std::fmax(x, 0.0), cavity.length);
  if (cavity.boundary == Boundary::dirichlet) {
    // sin(k x) = sin(pi * j*x/L); the reduced form keeps the wall and
    // midpoint zeros exact out to j = mode_cap.
    return {m.norm * sin_pi(j * (x / cavity.length)), 0.0};
  }
  double phase = m.k * x;
  return {m.norm * std::cos(phase), m.norm * std::sin(phase)};
}

CutoffResult effective_cutoff(
    const CavityConfig& cavity, int resonant_index,
    const std::function<std::vector<double>(int)>& aggregates) {
  cavity.validate();
  if (resonant_index < 1) throw std::invalid_argument("resonant index must be >= 1");
  if (!aggregates) throw std::invalid_argument("aggregates callback is empty");

  const int cap = cavity.mode_cap;
  int floor_j = std::max(4 * resonant_index, 64);
  if (floor_j >= cap)
    return CutoffResult{cap, false, std::numeric_limits<double>::quiet_NaN()};

  int c = floor_j;
  std::vector<double> a = aggregates(c);
  CutoffResult out;
  while (true) {
    int partner = std::min(2 * c, cap);
    std::vector<double> b = aggregates(partner);
    if (a.size() != b.size())
      throw std::runtime_error("aggregates returned inconsistent component counts");
    double change = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
      double rel = std::fabs(a[i] - b[i]) /
                   (std::fabs(a[i]) + std::fabs(b[i]) + kChangeFloor);
      change = std::max(change, rel);
    }
    out.last_change = change;
    if (change <= cavity.tail_tolerance) {
      out.j_max = c;
      out.converged = true;
      return out;
    }
    if (partner >= cap) {
      out.j_max = cap;
      out.converged = false;
      return out;
    }
    c = partner;
    a = std::move(b);
  }
}

}  // namespace landauer
