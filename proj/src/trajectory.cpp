#include "landauer/trajectory.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace landauer {

Trajectory Trajectory::at_rest(double x0) {
  Trajectory t;
  t.kind = Kind::at_rest;
  t.x0 = x0;
  return t;
}

Trajectory Trajectory::accelerated(double a) {
  Trajectory t;
  t.kind = Kind::accelerated;
  t.accel = a;
  return t;
}

void Trajectory::validate(const CavityConfig& cavity) const {
  cavity.validate();
  if (kind == Kind::at_rest) {
    if (!std::isfinite(x0) || x0 < 0.0 || x0 > cavity.length)
      throw std::invalid_argument("rest position " + std::to_string(x0) +
                                  " outside cavity [0, " +
                                  std::to_string(cavity.length) + "]");
  } else {
    if (!(accel > 0.0) || !std::isfinite(accel))
      throw std::invalid_argument("proper acceleration must be positive and finite");
  }
}

Event eval(const Trajectory& traj, double tau) {
  if (traj.kind == Trajectory::Kind::at_rest) return Event{tau, traj.x0};
  double a = traj.accel;
  double sh = std::sinh(0.5 * a * tau);
  // cosh(y) - 1 = 2 sinh^2(y/2): no cancellation near tau = 0
  return Event{std::sinh(a * tau) / a, 2.0 * sh * sh / a};
}

double max_proper_time(const Trajectory& traj, const CavityConfig& cavity) {
  cavity.validate();
  if (traj.kind == Trajectory::Kind::at_rest)
    return std::numeric_limits<double>::infinity();
  double a = traj.accel;
  return std::acosh(a * cavity.length + 1.0) / a;
}

}  // namespace landauer
