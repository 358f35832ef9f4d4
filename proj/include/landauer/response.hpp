#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include "landauer/modes.hpp"
#include "landauer/trajectory.hpp"

namespace landauer {

// Transition channel of the detector, named by what the window integral
// drives: `up` carries the e^{+i gap tau} phase (ground -> excited), `down`
// the e^{-i gap tau} phase.
enum class Channel { up, down };

enum class Method : std::uint8_t { closed_form, quadrature };

struct CouplingWindow {
  double lambda = 0.0;
  double duration = 0.0;  // unit window on [0, duration], sharp edges
  void validate() const;
};

struct QuadratureOptions {
  double tolerance = 1e-10;  // absolute, per mode integral
  long panel_cap = 1000000;  // per mode; exceeding it flags the result
  void validate() const;
};

// Window integrals of e^{i(+-gap tau + omega t(tau))} u_j(x(tau)) for modes
// 1..j_max, both channels.
struct ModeIntegrals {
  double gap = 0.0;
  std::vector<Mode> modes;
  std::vector<std::complex<double>> up;
  std::vector<std::complex<double>> down;
  std::vector<double> error;  // worst-channel absolute bound per mode
  std::vector<Method> method;
  bool converged = true;  // every error entry within tolerance
};

// Closed form for a detector at rest at x0.  Detuning Delta = +-gap + omega;
// below |Delta| <= 1e-9 max(gap, omega) the phase factor switches to its
// quadratic series to dodge the 0/0.
std::complex<double> static_response(Channel ch, const Mode& mode,
                                     const CavityConfig& cavity, double x0,
                                     double gap, double duration);

struct SegmentIntegral {
  std::complex<double> up{0.0, 0.0};
  std::complex<double> down{0.0, 0.0};
  double error_up = 0.0;
  double error_down = 0.0;
  long panels = 0;
  bool converged = true;
};

// Adaptive Gauss-Kronrod 7-15 integral of one mode, both channels, over the
// proper-time segment [a, b].  Panels start phase-resolved (a bounded number
// of radians each) and the worst panels split until the summed |K15 - G7|
// bound drops under tol or the panel budget runs out.
SegmentIntegral integrate_segment(const Mode& mode, const CavityConfig& cavity,
                                  const Trajectory& traj, double gap, double a,
                                  double b, double tol, long panel_cap);

// Full-window integrals for modes 1..j_max.  Rest trajectories use the
// closed form, accelerated ones the quadrature.  Throws std::domain_error if
// the worldline leaves the cavity before `duration`.
ModeIntegrals compute_all(const CavityConfig& cavity, const Trajectory& traj,
                          double gap, double duration, int j_max,
                          const QuadratureOptions& opts = {});

}  // namespace landauer
