// Acceptance gate: ten numbered release criteria, one verdict line each.
// Checks are implemented exactly as stated; a criterion the physics cannot
// satisfy fails loudly here rather than being quietly relaxed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "landauer/sweep.hpp"

using namespace landauer;
using clock_type = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void verdict(int id, const std::string& label, bool pass,
             const std::string& detail, double secs) {
  std::string line = pass ? "[PASS] " : "[FAIL] ";
  line += std::to_string(id) + ". " + label;
  if (!detail.empty()) line += ": " + detail;
  char buf[48];
  std::snprintf(buf, sizeof buf, " (%.2f s)", secs);
  line += buf;
  std::printf("%s\n", line.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Largest dip below the running maximum, relative to the larger magnitude in
// the comparison.  Zero for a non-decreasing sequence.
struct Ripple {
  double worst = 0.0;
  double tau = 0.0;
};

Ripple worst_ripple(const std::vector<SweepRow>& rows, double SweepRow::*col) {
  Ripple r;
  double mx = rows.front().*col;
  for (const SweepRow& row : rows) {
    double v = row.*col;
    double denom = std::max(std::fabs(mx), std::fabs(v));
    if (denom > 0.0 && mx - v > r.worst * denom) {
      r.worst = (mx - v) / denom;
      r.tau = row.tau;
    }
    mx = std::max(mx, v);
  }
  return r;
}

void criterion1(const SweepResult& fig1, double run_secs) {
  auto t0 = clock_type::now();
  bool pass = true;
  std::string detail;
  int neg_S = 0, neg_Q = 0;
  double first_neg_S = 0.0;
  for (const SweepRow& row : fig1.rows) {
    if (row.entropy_change < -1e-14) {
      if (neg_S == 0) first_neg_S = row.tau;
      ++neg_S;
    }
    if (row.heat < -1e-14) ++neg_Q;
  }
  if (neg_S || neg_Q) {
    pass = false;
    detail += "delta_S < -1e-14 at " + std::to_string(neg_S) + " rows (first tau=" +
              fmt(first_neg_S) + "), delta_Q at " + std::to_string(neg_Q);
  }
  Ripple rS = worst_ripple(fig1.rows, &SweepRow::entropy_change);
  Ripple rQ = worst_ripple(fig1.rows, &SweepRow::heat);
  if (rS.worst > 1e-3 || rQ.worst > 1e-3) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += "ripple above 1e-3: delta_S dip " + fmt(rS.worst) + " at tau=" +
              fmt(rS.tau) + ", delta_Q dip " + fmt(rQ.worst) + " at tau=" +
              fmt(rQ.tau);
  }
  double secs = seconds_since(t0) + run_secs;
  if (secs >= 10.0) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over 10 s");
  }
  verdict(1, "fig1 vacuum static: nonnegative and monotone", pass, detail,
          secs);
}

void criterion2(const SweepResult& fig2, double run_secs) {
  auto t0 = clock_type::now();
  bool pass = true;
  std::string detail;
  int neg_Q = 0, neg_res = 0, neg_S_rows = 0;
  for (const SweepRow& row : fig2.rows) {
    if (row.heat < 0.0) ++neg_Q;
    if (row.residual < 0.0) ++neg_res;
    if (row.entropy_change < 0.0) ++neg_S_rows;
  }
  if (neg_Q) {
    pass = false;
    detail += "delta_Q < 0 at " + std::to_string(neg_Q) + " rows";
  }
  if (neg_res) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") + std::string("residual < 0 at ") +
              std::to_string(neg_res) + " rows";
  }
  if (neg_S_rows == 0) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") +
              std::string("delta_S never goes negative");
  }
  if (run_secs >= 60.0) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") + std::string("sweep took ") +
              fmt(run_secs) + " s";
  }
  if (pass)
    detail = "delta_S < 0 at " + std::to_string(neg_S_rows) +
             " rows, sweep " + fmt(run_secs) + " s";
  verdict(2, "fig2 vacuum accelerated: heat up, entropy sign flip", pass,
          detail, seconds_since(t0) + run_secs);
}

void criterion3(const SweepResult& a, const SweepResult& b, double run_secs) {
  auto t0 = clock_type::now();
  bool pass = true;
  std::string detail;

  for (const SweepResult* res : {&a, &b}) {
    double TR = res->config.reservoir_temperature;
    for (const SweepRow& row : res->rows) {
      double scale =
          std::fabs(row.heat) + TR * std::fabs(row.entropy_change) + 1e-300;
      if (row.residual < -1e-10 * scale) {
        pass = false;
        detail += (detail.empty() ? "" : "; ") + std::string("residual ") +
                  fmt(row.residual) + " at T_R=" + fmt(TR) + " tau=" +
                  fmt(row.tau);
      }
    }
  }

  RunConfig cfg = b.config;
  DetectorState det;
  det.p = cfg.population;
  det.gap = b.gap;
  FieldState hot = FieldState::thermal(cfg.reservoir_temperature,
                                       build_modes(cfg.cavity, 15));
  if (sign_condition(det, hot, 15)) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") +
              std::string("sign_condition true at T_R=100");
  }

  std::vector<double> bad_taus;
  for (const SweepRow& row : b.rows) {
    if (row.tau == 0.0) continue;
    if (row.entropy_change >= 0.0 || row.heat >= 0.0)
      bad_taus.push_back(row.tau);
  }
  if (!bad_taus.empty()) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") + std::string("not negative at ") +
              std::to_string(bad_taus.size()) + " of " +
              std::to_string(b.rows.size() - 1) + " nonzero rows (";
    for (std::size_t i = 0; i < bad_taus.size() && i < 3; ++i)
      detail += (i ? ", " : "") + std::string("tau=") + fmt(bad_taus[i]);
    detail += ")";
  }
  double secs = seconds_since(t0) + run_secs;
  if (secs >= 10.0) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over 10 s");
  }
  verdict(3, "fig4 thermal pair: bound margin and hot-reservoir signs", pass,
          detail, secs);
}

void criterion4() {
  auto t0 = clock_type::now();
  std::mt19937_64 rng(20260822);
  std::uniform_real_distribution<double> Lr(0.6, 3.5), xr(0.05, 0.95),
      gr(0.5, 30.0), Tr(0.1, 3.0);
  bool pass = true;
  std::string detail;
  double worst = 0.0;
  for (int draw = 0; draw < 20 && pass; ++draw) {
    CavityConfig cav;
    cav.length = Lr(rng);
    double x0 = xr(rng) * cav.length;
    double gap = gr(rng);
    double T = Tr(rng);
    Trajectory tr = Trajectory::at_rest(x0);
    for (int j = 1; j <= 64; ++j) {
      Mode m = make_mode(j, cav);
      SegmentIntegral seg =
          integrate_segment(m, cav, tr, gap, 0.0, T, 1e-12, 1000000);
      std::complex<double> cu = static_response(Channel::up, m, cav, x0, gap, T);
      std::complex<double> cd =
          static_response(Channel::down, m, cav, x0, gap, T);
      double du = std::abs(seg.up - cu) / (std::abs(cu) + 1e-12);
      double dd = std::abs(seg.down - cd) / (std::abs(cd) + 1e-12);
      worst = std::max(worst, std::max(du, dd));
      if (worst > 1e-9) {
        pass = false;
        detail = "mode " + std::to_string(j) + " off by " + fmt(worst) +
                 " rel (L=" + fmt(cav.length) + ", gap=" + fmt(gap) + ")";
        break;
      }
    }
  }
  double secs = seconds_since(t0);
  if (secs >= 30.0) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over 30 s");
  }
  if (pass) detail = "worst relative miss " + fmt(worst);
  verdict(4, "static closed form vs quadrature, 20 draws x 64 modes", pass,
          detail, secs);
}

void criterion5() {
  auto t0 = clock_type::now();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> Lr(0.6, 3.0), xr(0.08, 0.92),
      pr(0.02, 0.95), Tr(0.2, 2.5), logTR(std::log(0.05), std::log(50.0));
  std::uniform_int_distribution<int> jr(2, 12);
  bool pass = true;
  std::string detail;
  double worst = 0.0;
  for (int it = 0; it < 50; ++it) {
    CavityConfig cav;
    cav.length = Lr(rng);
    DetectorState det;
    det.p = pr(rng);
    det.gap = mode_frequency(jr(rng), cav);
    ModeIntegrals mi = compute_all(
        cav, Trajectory::at_rest(xr(rng) * cav.length), det.gap, Tr(rng), 32,
        {});
    ReducedCorrections vac = vacuum_corrections(det, mi, 0.01);
    double rel = std::fabs(check_trace(vac)) /
                 (vac.probability_added + vac.probability_removed + 1e-300);
    worst = std::max(worst, rel);

    FieldState field = FieldState::thermal(std::exp(logTR(rng)), mi.modes);
    ReducedCorrections th = thermal_corrections(det, field, mi, 0.01);
    rel = std::fabs(check_trace(th)) /
          (th.probability_added + th.probability_removed + 1e-300);
    worst = std::max(worst, rel);
  }
  if (worst >= 1e-12) {
    pass = false;
    detail = "worst relative defect " + fmt(worst);
  } else {
    detail = "worst relative defect " + fmt(worst);
  }
  verdict(5, "trace preserved on 50 vacuum + 50 thermal draws", pass, detail,
          seconds_since(t0));
}

void criterion6() {
  auto t0 = clock_type::now();
  CavityConfig cav;
  cav.length = 1.56789;
  Mode m = make_mode(10, cav);
  double u = std::abs(mode_function(10, 0.212345, cav));
  bool pass = true;
  std::string detail;
  double worst = 0.0;
  for (int i = 1; i <= 100; ++i) {
    double T = 0.02 * i;
    std::complex<double> I =
        static_response(Channel::down, m, cav, 0.212345, m.omega, T);
    double rel = std::fabs(std::abs(I) - u * T) / (u * T);
    worst = std::max(worst, rel);
  }
  if (worst > 1e-12) {
    pass = false;
    detail = "worst relative deviation " + fmt(worst);
  } else {
    detail = "worst relative deviation " + fmt(worst);
  }
  verdict(6, "resonant response linear in the window over 100 durations", pass,
          detail, seconds_since(t0));
}

void criterion7() {
  auto t0 = clock_type::now();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> Lr(0.6, 3.0), xr(0.08, 0.92),
      pr(0.02, 0.48), Tr(0.2, 2.0);
  std::uniform_int_distribution<int> jr(2, 12);
  bool pass = true;
  double worst = 0.0;
  for (int it = 0; it < 20; ++it) {
    CavityConfig cav;
    cav.length = Lr(rng);
    DetectorState det;
    det.p = pr(rng);
    det.gap = mode_frequency(jr(rng), cav);
    ModeIntegrals mi = compute_all(
        cav, Trajectory::at_rest(xr(rng) * cav.length), det.gap, Tr(rng), 32,
        {});
    ReducedCorrections vac = vacuum_corrections(det, mi, 0.01);
    LandauerReport vr = vacuum_entropy_and_heat(det, vac, mi, 0.01,
                                                EntropyMethod::linearized);
    FieldState cold = FieldState::thermal(1e-6, mi.modes);
    ReducedCorrections th = thermal_corrections(det, cold, mi, 0.01);
    LandauerReport tr = thermal_entropy_and_heat(det, cold, th, mi, 0.01,
                                                 EntropyMethod::linearized);
    auto rel = [](double x, double y) {
      return std::fabs(x - y) / (std::fabs(y) + 1e-300);
    };
    worst = std::max(worst, rel(tr.entropy_change, vr.entropy_change));
    worst = std::max(worst, rel(tr.heat, vr.heat));
    worst = std::max(worst, rel(th.population_shift, vac.population_shift));
  }
  if (worst > 1e-6) pass = false;
  verdict(7, "thermal results at T_R=1e-6 collapse onto vacuum", pass,
          "worst relative gap " + fmt(worst), seconds_since(t0));
}

void criterion8() {
  auto t0 = clock_type::now();
  bool pass = true;
  std::string detail;
  auto endpoints = [](int n0, int steps) {
    std::set<int> out;
    for (unsigned w = 0; w < (1u << steps); ++w) {
      int occ = n0;
      bool ok = true;
      for (int s = 0; s < steps; ++s) {
        occ += (w >> s & 1) ? 1 : -1;
        if (occ < 0) {
          ok = false;
          break;
        }
      }
      if (ok) out.insert(occ);
    }
    return out;
  };
  for (int n0 = 0; n0 <= 6 && pass; ++n0) {
    for (int order = 0; order <= 3 && pass; ++order) {
      std::set<int> want;
      for (int k = 0; k <= 2 * order; ++k) {
        std::set<int> ket = endpoints(n0, k);
        std::set<int> bra = endpoints(n0, 2 * order - k);
        for (int mval : ket)
          if (bra.count(mval)) want.insert(mval);
      }
      std::vector<int> got = reachable_occupations(n0, order);
      if (std::set<int>(got.begin(), got.end()) != want ||
          got.size() != want.size()) {
        pass = false;
        detail = "mismatch at n=" + std::to_string(n0) + ", order " +
                 std::to_string(order);
      }
    }
  }
  verdict(8, "occupancy ladder matches operator-word enumeration", pass,
          detail, seconds_since(t0));
}

void criterion9() {
  auto t0 = clock_type::now();
  bool pass = true;
  std::string detail;

  CavityConfig cav;
  cav.length = 1.56789;
  DetectorState det;
  det.p = 0.05;
  det.gap = mode_frequency(10, cav);
  ModeIntegrals mi =
      compute_all(cav, Trajectory::at_rest(0.212345), det.gap, 0.6, 64, {});

  ReducedCorrections c1 = vacuum_corrections(det, mi, 0.01);
  ReducedCorrections c2 = vacuum_corrections(det, mi, 0.02);
  LandauerReport r1 =
      vacuum_entropy_and_heat(det, c1, mi, 0.01, EntropyMethod::linearized);
  LandauerReport r2 =
      vacuum_entropy_and_heat(det, c2, mi, 0.02, EntropyMethod::linearized);
  for (double ratio : {c2.population_shift / c1.population_shift,
                       r2.entropy_change / r1.entropy_change,
                       r2.heat / r1.heat}) {
    if (std::fabs(ratio - 4.0) > 4e-12) {
      pass = false;
      detail = "lambda^2 ratio " + fmt(ratio);
    }
  }

  auto entropy_gap = [&](double lambda) {
    ReducedCorrections c = vacuum_corrections(det, mi, lambda);
    LandauerReport lin =
        vacuum_entropy_and_heat(det, c, mi, lambda, EntropyMethod::linearized);
    LandauerReport ex =
        vacuum_entropy_and_heat(det, c, mi, lambda, EntropyMethod::exact);
    return std::fabs(ex.entropy_change - lin.entropy_change);
  };
  double shrink = entropy_gap(0.04) / entropy_gap(0.02);
  if (!(shrink >= 12.8 && shrink <= 19.2)) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") +
              std::string("linearization gap shrink ") + fmt(shrink);
  }
  if (pass)
    detail = "linearization gap shrink " + fmt(shrink) + " on halving lambda";
  verdict(9, "corrections scale as lambda^2, linearization error as lambda^4",
          pass, detail, seconds_since(t0));
}

void criterion10() {
  auto t0 = clock_type::now();
  CavityConfig cav;
  cav.length = 1.234;
  double gap = mode_frequency(15, cav);
  bool pass = true;
  std::string detail;
  int violations = 0;
  double worst_margin = 0.0;
  for (double tau : {0.2, 0.8, 2.0}) {
    ModeIntegrals mi =
        compute_all(cav, Trajectory::at_rest(0.52345), gap, tau, 128, {});
    for (int ip = 0; ip < 10; ++ip) {
      DetectorState det;
      det.p = 0.01 + (ip + 0.5) * 0.048;
      det.gap = gap;
      for (int it = 0; it < 10; ++it) {
        double TR = std::pow(10.0, -2.0 + 4.0 * it / 9.0);
        FieldState field = FieldState::thermal(TR, mi.modes);
        ReducedCorrections corr = thermal_corrections(det, field, mi, 0.01);
        LandauerReport r = thermal_entropy_and_heat(
            det, field, corr, mi, 0.01, EntropyMethod::linearized);
        double scale =
            std::fabs(r.heat) + TR * std::fabs(r.entropy_change) + 1e-300;
        double margin = r.residual / scale;
        worst_margin = std::min(worst_margin, margin);
        if (r.residual < -1e-10 * scale) {
          ++violations;
          if (violations == 1)
            detail = "first violation at p=" + fmt(det.p) + ", T_R=" + fmt(TR) +
                     ", tau=" + fmt(tau);
        }
      }
    }
  }
  if (violations) {
    pass = false;
    detail += "; " + std::to_string(violations) + " violations";
  } else {
    detail = "worst scaled margin " + fmt(worst_margin);
  }
  verdict(10, "bound holds on the 10x10 (p, T_R) grid at fig4 geometry", pass,
          detail, seconds_since(t0));
}

}  // namespace

int main() {
  auto wall0 = clock_type::now();

  auto t1 = clock_type::now();
  SweepResult fig1 = run_sweep(figure_preset("fig1"));
  double fig1_secs = seconds_since(t1);

  auto t2 = clock_type::now();
  SweepResult fig2 = run_sweep(figure_preset("fig2"));
  double fig2_secs = seconds_since(t2);

  auto t3 = clock_type::now();
  SweepResult fig4a = run_sweep(figure_preset("fig4a"));
  SweepResult fig4b = run_sweep(figure_preset("fig4b"));
  double fig4_secs = seconds_since(t3);

  // Criterion clocks fold in the sweep they consume.
  criterion1(fig1, fig1_secs);
  criterion2(fig2, fig2_secs);
  criterion3(fig4a, fig4b, fig4_secs);
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();

  std::printf("acceptance: %d of 10 criteria pass", 10 - g_failures);
  std::printf(" (fig1 %.2f s, fig2 %.2f s, fig4 pair %.2f s, total %.1f s)\n",
              fig1_secs, fig2_secs, fig4_secs, seconds_since(wall0));
  return g_failures == 0 ? 0 : 2;
}
