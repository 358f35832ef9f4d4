#pragma once
#include <vector>

#include "landauer/response.hpp"

namespace landauer {

struct DetectorState {
  double p = 0.0;    // excited-state population, 0 < p < 1
  double gap = 0.0;  // level splitting, > 0
  void validate() const;
};

struct FieldState {
  enum class Kind { vacuum, thermal };
  Kind kind = Kind::vacuum;
  double temperature = 0.0;      // T_R, thermal only
  std::vector<double> omega;     // per-mode frequency (thermal only)
  std::vector<double> occupancy; // mean occupation n_j (thermal only)

  static FieldState vacuum();
  static FieldState thermal(double temperature, const std::vector<Mode>& modes);
};

// Bose-Einstein mean occupation 1/(e^{omega/T} - 1); underflows cleanly to
// zero for omega/T past ~745.
double mean_occupancy(double omega, double temperature);

// Second-order corrections to the joint state, reduced to the detector
// population and the per-mode field transition weights.  All entries carry
// the lambda^2 prefactor.
struct ReducedCorrections {
  double population_shift = 0.0;  // delta p
  std::vector<double> raising;    // field gains a quantum in mode j
  std::vector<double> lowering;   // field loses one; empty for vacuum
  // Same probability total by two summation routes; their difference is the
  // trace defect.
  double probability_added = 0.0;
  double probability_removed = 0.0;
  bool perturbative_ok = true;  // |delta p| <= 0.1 * min(p, 1-p)
};

ReducedCorrections vacuum_corrections(const DetectorState& det,
                                      const ModeIntegrals& integrals,
                                      double lambda);
ReducedCorrections thermal_corrections(const DetectorState& det,
                                       const FieldState& field,
                                       const ModeIntegrals& integrals,
                                       double lambda);

// Signed bookkeeping defect (added - removed); algebraically zero.
double check_trace(const ReducedCorrections& corr);

// Occupation numbers reachable from |n_j> when the coupling acts to combined
// order 2*order on bra and ket: the contiguous band
// [max(0, n_j - order), n_j + order].
std::vector<int> reachable_occupations(int n_j, int order);

}  // namespace landauer
