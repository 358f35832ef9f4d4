#pragma once
#include "landauer/modes.hpp"

namespace landauer {

// Detector worldline, parameterized by proper time with tau = 0 at (t, x) =
// (0, 0) for the accelerated branch and (0, x0) for the rest branch.
struct Trajectory {
  enum class Kind { at_rest, accelerated };
  Kind kind = Kind::at_rest;
  double x0 = 0.0;     // rest position
  double accel = 0.0;  // proper acceleration a > 0

  static Trajectory at_rest(double x0);
  static Trajectory accelerated(double a);
  // Throws std::invalid_argument on a bad parameter (x0 outside the cavity,
  // nonpositive acceleration).
  void validate(const CavityConfig& cavity) const;
};

struct Event {
  double t = 0.0;
  double x = 0.0;
};

// Coordinates at proper time tau.  Accelerated branch: t = sinh(a tau)/a,
// x = (cosh(a tau) - 1)/a, launched from the left wall.
Event eval(const Trajectory& traj, double tau);

// Largest proper time before the worldline exits the cavity; +infinity for
// a detector at rest.
double max_proper_time(const Trajectory& traj, const CavityConfig& cavity);

}  // namespace landauer
