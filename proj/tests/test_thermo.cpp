#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "landauer/thermo.hpp"

using namespace landauer;

namespace {

struct Fixture {
  CavityConfig cav;
  DetectorState det;
  ModeIntegrals mi;
  FieldState field;  // thermal fixtures only
};

Fixture fig1_at(double tau, double p = 0.05) {
  Fixture f;
  f.cav.length = 1.56789;
  f.det.p = p;
  f.det.gap = mode_frequency(10, f.cav);
  f.mi = compute_all(f.cav, Trajectory::at_rest(0.212345), f.det.gap, tau, 64,
                     {});
  return f;
}

Fixture fig4_at(double tau, double reservoir_T) {
  Fixture f;
  f.cav.length = 1.234;
  f.det.p = 0.05;
  f.det.gap = mode_frequency(15, f.cav);
  f.mi = compute_all(f.cav, Trajectory::at_rest(0.52345), f.det.gap, tau, 64,
                     {});
  f.field = FieldState::thermal(reservoir_T, f.mi.modes);
  return f;
}

}  // namespace

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.25) == binary_entropy(0.75));
  CHECK(binary_entropy(0.1) > 0.0);
}

TEST_CASE("vacuum entropy and heat pinned values") {
  Fixture f = fig1_at(0.6);
  ReducedCorrections corr = vacuum_corrections(f.det, f.mi, 0.01);
  LandauerReport r = vacuum_entropy_and_heat(f.det, corr, f.mi, 0.01,
                                             EntropyMethod::linearized);
  CHECK(r.entropy_change ==
        doctest::Approx(8.6356290084352811e-8).epsilon(1e-12));
  CHECK(r.heat == doctest::Approx(4.7995353111153737e-6).epsilon(1e-12));
  CHECK_FALSE(r.heat_over_temperature.has_value());
  CHECK(r.reservoir_temperature == 0.0);
  CHECK(r.residual == r.heat);
  CHECK(r.modes_used == 64);
  CHECK(r.quad_converged);
  CHECK(r.population_shift == corr.population_shift);

  // Vacuum heat is a sum of nonnegative mode terms.
  REQUIRE(r.mode_heat.size() == 64);
  double sh = 0.0, se = 0.0;
  for (int i = 0; i < 64; ++i) {
    CHECK(r.mode_heat[i] >= 0.0);
    sh += r.mode_heat[i];
    se += r.mode_entropy[i];
  }
  CHECK(sh == doctest::Approx(r.heat).epsilon(1e-13));
  CHECK(se == doctest::Approx(r.entropy_change).epsilon(1e-13));
}

TEST_CASE("entropy change is the log-ratio times the population shift") {
  // Two routes through different modules must agree: Delta S (mode sums in
  // the report) against -ln((1-p)/p) * delta p (population bookkeeping).
  for (double tau : {0.3, 0.6, 1.7}) {
    Fixture f = fig1_at(tau, 0.07);
    ReducedCorrections corr = vacuum_corrections(f.det, f.mi, 0.01);
    LandauerReport r = vacuum_entropy_and_heat(f.det, corr, f.mi, 0.01,
                                               EntropyMethod::linearized);
    double lg = std::log((1.0 - f.det.p) / f.det.p);
    CHECK(r.entropy_change ==
          doctest::Approx(-lg * corr.population_shift).epsilon(1e-12));
  }
}

TEST_CASE("thermal entropy and heat pinned values") {
  Fixture f = fig4_at(0.6, 1.0);
  ReducedCorrections corr = thermal_corrections(f.det, f.field, f.mi, 0.01);
  LandauerReport r = thermal_entropy_and_heat(f.det, f.field, corr, f.mi, 0.01,
                                              EntropyMethod::linearized);
  CHECK(r.entropy_change ==
        doctest::Approx(1.1472332578676786e-7).epsilon(1e-12));
  CHECK(r.heat == doctest::Approx(3.5276943454683978e-6).epsilon(1e-12));
  REQUIRE(r.heat_over_temperature.has_value());
  CHECK(*r.heat_over_temperature ==
        doctest::Approx(3.5276943454683978e-6).epsilon(1e-12));
  CHECK(r.residual == doctest::Approx(3.41297101968163e-6).epsilon(1e-12));
  CHECK(r.reservoir_temperature == 1.0);

  double lg = std::log((1.0 - f.det.p) / f.det.p);
  CHECK(r.entropy_change ==
        doctest::Approx(-lg * corr.population_shift).epsilon(1e-12));
}

TEST_CASE("heat matches the field energy bookkeeping") {
  // Delta Q must equal sum omega_j (w+_j - w-_j) built from the correction
  // weights, vacuum and thermal alike.
  Fixture v = fig1_at(0.9);
  ReducedCorrections vc = vacuum_corrections(v.det, v.mi, 0.01);
  LandauerReport vr = vacuum_entropy_and_heat(v.det, vc, v.mi, 0.01,
                                              EntropyMethod::linearized);
  double balance = 0.0;
  for (int i = 0; i < 64; ++i) balance += v.mi.modes[i].omega * vc.raising[i];
  CHECK(vr.heat == doctest::Approx(balance).epsilon(1e-12));

  Fixture t = fig4_at(0.9, 3.7);
  ReducedCorrections tc = thermal_corrections(t.det, t.field, t.mi, 0.01);
  LandauerReport tr = thermal_entropy_and_heat(t.det, t.field, tc, t.mi, 0.01,
                                               EntropyMethod::linearized);
  balance = 0.0;
  for (int i = 0; i < 64; ++i)
    balance += t.mi.modes[i].omega * (tc.raising[i] - tc.lowering[i]);
  CHECK(tr.heat == doctest::Approx(balance).epsilon(1e-12));
}

TEST_CASE("heat over temperature is consistent across regimes") {
  // T_R * (Delta Q / T_R) must recover Delta Q, including where every mode
  // occupancy underflows to zero and the log weight falls back to omega/T.
  for (double TR : {1e-3, 0.2, 1.0, 42.0, 1e6}) {
    Fixture f = fig4_at(0.7, TR);
    ReducedCorrections corr = thermal_corrections(f.det, f.field, f.mi, 0.01);
    LandauerReport r = thermal_entropy_and_heat(f.det, f.field, corr, f.mi,
                                                0.01, EntropyMethod::linearized);
    REQUIRE(r.heat_over_temperature.has_value());
    CHECK(std::isfinite(*r.heat_over_temperature));
    CHECK(TR * *r.heat_over_temperature ==
          doctest::Approx(r.heat).epsilon(1e-12));
  }
}

TEST_CASE("landauer residual recomputes from the report") {
  Fixture f = fig4_at(0.6, 1.0);
  ReducedCorrections corr = thermal_corrections(f.det, f.field, f.mi, 0.01);
  LandauerReport r = thermal_entropy_and_heat(f.det, f.field, corr, f.mi, 0.01,
                                              EntropyMethod::linearized);
  CHECK(landauer_residual(r) == r.residual);
  CHECK(r.residual ==
        doctest::Approx(r.heat - r.reservoir_temperature * r.entropy_change)
            .epsilon(1e-15));
}

TEST_CASE("exact entropy differs from linearized at fourth order") {
  // |exact - linearized| ~ S''(p) delta_p^2 / 2, so halving lambda shrinks
  // the gap sixteenfold.
  auto gap_at = [](double lambda) {
    Fixture f = fig1_at(0.6);
    ReducedCorrections corr = vacuum_corrections(f.det, f.mi, lambda);
    LandauerReport lin = vacuum_entropy_and_heat(f.det, corr, f.mi, lambda,
                                                 EntropyMethod::linearized);
    LandauerReport ex = vacuum_entropy_and_heat(f.det, corr, f.mi, lambda,
                                                EntropyMethod::exact);
    CHECK(ex.entropy_method == EntropyMethod::exact);
    return std::fabs(ex.entropy_change - lin.entropy_change);
  };
  double wide = gap_at(0.04);
  double narrow = gap_at(0.02);
  CHECK(wide / narrow == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("effective detector temperature") {
  CHECK(effective_detector_temperature(0.05, 2.5) ==
        doctest::Approx(0.84905817973777149).epsilon(1e-15));
  CHECK(effective_detector_temperature(0.05, 20.037073095624012) ==
        doctest::Approx(6.8050563239372791).epsilon(1e-15));
  CHECK(std::isinf(effective_detector_temperature(0.5, 1.0)));
  CHECK(effective_detector_temperature(0.5, 1.0) > 0.0);
  CHECK(effective_detector_temperature(0.9, 1.0) < 0.0);
  CHECK_THROWS_AS(effective_detector_temperature(0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(effective_detector_temperature(0.05, 0.0),
                  std::invalid_argument);
}

TEST_CASE("sign condition") {
  CavityConfig cav;
  cav.length = 1.234;
  std::vector<Mode> modes = build_modes(cav, 16);
  DetectorState det;
  det.p = 0.05;
  det.gap = modes[14].omega;

  // omega_15/T = 38.19 for T_R = 1: well past ln 19.
  CHECK(sign_condition(det, FieldState::thermal(1.0, modes), 15));
  // T_R = 100 drops the ratio to 0.38: condition fails.
  CHECK_FALSE(sign_condition(det, FieldState::thermal(100.0, modes), 15));

  // An exact tie resolves to false (strict inequality).
  FieldState tie;
  tie.kind = FieldState::Kind::thermal;
  tie.temperature = 1.0;
  tie.omega = {std::log((1.0 - det.p) / det.p)};
  tie.occupancy = {1.0};
  CHECK_FALSE(sign_condition(det, tie, 1));

  CHECK_THROWS_AS(sign_condition(det, FieldState::vacuum(), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(sign_condition(det, FieldState::thermal(1.0, modes), 17),
                  std::invalid_argument);
}
