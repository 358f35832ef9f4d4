#pragma once
#include <optional>

#include "landauer/perturbation.hpp"

namespace landauer {

enum class EntropyMethod { linearized, exact };

struct LandauerReport {
  double entropy_change = 0.0;  // Delta S: initial minus final detector entropy
  double heat = 0.0;            // Delta Q into the field
  std::optional<double> heat_over_temperature;  // Delta Q / T_R, thermal only
  double residual = 0.0;        // Delta Q - T_R * Delta S
  double reservoir_temperature = 0.0;  // 0 for vacuum
  std::vector<double> mode_entropy;    // linearized per-mode decomposition
  std::vector<double> mode_heat;
  EntropyMethod entropy_method = EntropyMethod::linearized;
  // diagnostics
  int modes_used = 0;
  double max_quad_error = 0.0;
  bool quad_converged = true;
  bool perturbative_ok = true;
  double population_shift = 0.0;
};

// -p ln p - (1-p) ln(1-p), continuous 0 at the endpoints.
double binary_entropy(double p);

// Entropy change and dissipated heat at second order.  `exact` entropy takes
// the full binary-entropy difference S(p) - S(p + delta p); `linearized`
// (the default elsewhere) keeps the first order in delta p, which is what
// the per-mode arrays decompose.
LandauerReport vacuum_entropy_and_heat(const DetectorState& det,
                                       const ReducedCorrections& corr,
                                       const ModeIntegrals& integrals,
                                       double lambda, EntropyMethod method);
LandauerReport thermal_entropy_and_heat(const DetectorState& det,
                                        const FieldState& field,
                                        const ReducedCorrections& corr,
                                        const ModeIntegrals& integrals,
                                        double lambda, EntropyMethod method);

// Delta Q - T_R * Delta S, recomputed from the report fields.
double landauer_residual(const LandauerReport& report);

// Temperature assigning population p to a two-level system with the given
// splitting: gap / ln((1-p)/p).  p = 1/2 maps to +infinity, p > 1/2 to a
// negative temperature.
double effective_detector_temperature(double p, double gap);

// True when mode j pushes the entropy change negative for a hot reservoir:
// omega_j / T_R > ln((1-p)/p), strictly (a tie fails).
bool sign_condition(const DetectorState& det, const FieldState& field, int j);

}  // namespace landauer
