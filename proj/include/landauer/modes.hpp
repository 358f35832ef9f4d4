#pragma once
#include <complex>
#include <functional>
#include <vector>

namespace landauer {

enum class Boundary { dirichlet, periodic };

struct CavityConfig {
  double length = 1.0;
  Boundary boundary = Boundary::dirichlet;
  // Hard cap on the mode index; cutoff search never exceeds it.
  int mode_cap = 4096;
  // Relative octave-change threshold accepted by effective_cutoff.
  double tail_tolerance = 1e-3;

  void validate() const;  // throws std::invalid_argument
};

// One field mode.  Dirichlet: k = j*pi/L, u_j = sin(k x)/sqrt(omega L).
// Periodic: indices pair up as (2n-1, 2n) -> k = +-2*pi*n/L, u_j =
// exp(i k x)/sqrt(omega L); the zero mode is skipped.
struct Mode {
  int index = 0;
  double k = 0.0;
  double omega = 0.0;
  double norm = 0.0;  // 1/sqrt(omega L)
};

double mode_frequency(int j, const CavityConfig& cavity);
Mode make_mode(int j, const CavityConfig& cavity);
std::vector<Mode> build_modes(const CavityConfig& cavity, int j_max);

// Complex mode amplitude at position x (imaginary part zero for Dirichlet).
// x must lie in [0, L] up to a 1e-12*L slack.
std::complex<double> mode_function(int j, double x, const CavityConfig& cavity);

// sin(pi*t) with exact zeros at integer t and exact +-1 at half-integers.
double sin_pi(double t);

struct CutoffResult {
  int j_max = 0;
  bool converged = false;
  // Worst relative component change at the last tested pair (NaN if the
  // search never ran a comparison).
  double last_change = 0.0;
};

// Octave-doubling tail test.  `aggregates(J)` returns the observables summed
// over modes 1..J; the search starts at max(4*resonant_index, 64) and accepts
// cutoff J when every component changes by at most tail_tolerance (relative,
// |a-b|/(|a|+|b|+1e-30)) when J doubles.  The comparison partner is clamped
// to the cap, and failure at the cap is reported, never silently absorbed.
CutoffResult effective_cutoff(
    const CavityConfig& cavity, int resonant_index,
    const std::function<std::vector<double>(int)>& aggregates);

}  // namespace landauer
