#include "landauer/response.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "landauer/kernels.hpp"

namespace landauer {

namespace {

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1], positive half.
constexpr double kXgk[8] = {
    9.9145537112081263920685469752633e-01, 9.4910791234275852452618968404785e-01,
    8.6486442335976907278971278864093e-01, 7.4153118559939443986386477328079e-01,
    5.8608723546769113029414483825873e-01, 4.0584515137739716690660641207696e-01,
    2.0778495500789846760068940377324e-01, 0.0};
constexpr double kWgk[8] = {
    2.2935322010529224963732008058970e-02, 6.3092092629978553290700663189204e-02,
    1.0479001032225018383987632254152e-01, 1.4065325971552591874518959051024e-01,
    1.6900472663926790282658342659855e-01, 1.9035057806478540991325640242101e-01,
    2.0443294007529889241416199923465e-01, 2.0948214108472782801299917489171e-01};
constexpr double kWg[4] = {
    1.2948496616886969327061143267908e-01, 2.7970539148927666790146777142378e-01,
    3.8183005050511894495036977548898e-01, 4.1795918367346938775510204081633e-01};

constexpr int kNodes = 15;

// Initial panel layout targets this many radians of integrand phase per
// panel; the G7 defect at this width sits orders of magnitude under the
// default tolerance, so refinement rarely triggers.
constexpr double kPhasePerPanel = 2.0;

// Node offsets in evaluation order: -x0..-x6, 0, x6..x0.  kWk mirrors that
// order for the Kronrod rule; Gauss points sit at odd kXgk indices plus the
// center, picked out by kGaussSlot.
struct NodeTable {
  double xi[kNodes];
  double wk[kNodes];
  double wg[kNodes];  // zero off the Gauss subset
};

NodeTable build_nodes() {
  NodeTable t{};
  for (int i = 0; i < 7; ++i) {
    t.xi[i] = -kXgk[i];
    t.xi[14 - i] = kXgk[i];
    t.wk[i] = kWgk[i];
    t.wk[14 - i] = kWgk[i];
  }
  t.xi[7] = 0.0;
  t.wk[7] = kWgk[7];
  for (int i = 0; i < kNodes; ++i) t.wg[i] = 0.0;
  // Gauss abscissae are kXgk[1], kXgk[3], kXgk[5] and the center.
  t.wg[1] = kWg[0];
  t.wg[13] = kWg[0];
  t.wg[3] = kWg[1];
  t.wg[11] = kWg[1];
  t.wg[5] = kWg[2];
  t.wg[9] = kWg[2];
  t.wg[7] = kWg[3];
  return t;
}

const NodeTable& nodes() {
  static const NodeTable t = build_nodes();
  return t;
}

struct Panel {
  double a = 0.0;
  double b = 0.0;
  std::complex<double> up{0.0, 0.0};
  std::complex<double> down{0.0, 0.0};
  double eu = 0.0;
  double ed = 0.0;
};

struct Workspace {
  std::vector<double> tau, t, x, arg, sg, cg, sw, cw, su, cu;
  std::vector<double> fu_re, fu_im, fd_re, fd_im;

  void resize(std::size_t n) {
    tau.resize(n);
    t.resize(n);
    x.resize(n);
    arg.resize(n);
    sg.resize(n);
    cg.resize(n);
    sw.resize(n);
    cw.resize(n);
    su.resize(n);
    cu.resize(n);
    fu_re.resize(n);
    fu_im.resize(n);
    fd_re.resize(n);
    fd_im.resize(n);
  }
};

// Evaluates panels[first..end): fills values and |K15 - G7| error bounds for
// both channels.  One batched pass: coordinates, then the three phase
// factors, then the complex combine, then the per-panel rules.
void eval_panels(std::vector<Panel>& panels, std::size_t first, const Mode& m,
                 const CavityConfig& cavity, const Trajectory& traj, double gap,
                 Workspace& ws) {
  const NodeTable& nt = nodes();
  const std::size_t np = panels.size() - first;
  if (np == 0) return;
  const std::size_t n = np * kNodes;
  ws.resize(n);

  for (std::size_t p = 0; p < np; ++p) {
    const Panel& pl = panels[first + p];
    double c = 0.5 * (pl.a + pl.b), h = 0.5 * (pl.b - pl.a);
    for (int i = 0; i < kNodes; ++i) ws.tau[p * kNodes + i] = c + h * nt.xi[i];
  }

  const bool rest = traj.kind == Trajectory::Kind::at_rest;
  if (rest) {
    for (std::size_t i = 0; i < n; ++i) ws.t[i] = ws.tau[i];
  } else {
    const double a = traj.accel;
    for (std::size_t i = 0; i < n; ++i) ws.arg[i] = a * ws.tau[i];
    kernels::exp(ws.arg.data(), ws.x.data(), n);  // x holds e^{a tau}
    for (std::size_t i = 0; i < n; ++i) {
      double e = ws.x[i], einv = 1.0 / e;
      ws.t[i] = (e - einv) / (2.0 * a);
      ws.x[i] = (e + einv - 2.0) / (2.0 * a);
    }
  }

  for (std::size_t i = 0; i < n; ++i) ws.arg[i] = gap * ws.tau[i];
  kernels::sincos(ws.arg.data(), ws.sg.data(), ws.cg.data(), n);
  for (std::size_t i = 0; i < n; ++i) ws.arg[i] = m.omega * ws.t[i];
  kernels::sincos(ws.arg.data(), ws.sw.data(), ws.cw.data(), n);

  const bool dirichlet = cavity.boundary == Boundary::dirichlet;
  double u0_re = 0.0, u0_im = 0.0;
  if (rest) {
    auto u0 = mode_function(m.index, traj.x0, cavity);
    u0_re = u0.real();
    u0_im = u0.imag();
  } else {
    for (std::size_t i = 0; i < n; ++i) ws.arg[i] = m.k * ws.x[i];
    kernels::sincos(ws.arg.data(), ws.su.data(), ws.cu.data(), n);
  }

  for (std::size_t i = 0; i < n; ++i) {
    double ure, uim;
    if (rest) {
      ure = u0_re;
      uim = u0_im;
    } else if (dirichlet) {
      ure = m.norm * ws.su[i];
      uim = 0.0;
    } else {
      ure = m.norm * ws.cu[i];
      uim = m.norm * ws.su[i];
    }
    // A = u e^{i omega t}; channels differ by e^{+-i gap tau}
    double are = ure * ws.cw[i] - uim * ws.sw[i];
    double aim = ure * ws.sw[i] + uim * ws.cw[i];
    ws.fu_re[i] = are * ws.cg[i] - aim * ws.sg[i];
    ws.fu_im[i] = aim * ws.cg[i] + are * ws.sg[i];
    ws.fd_re[i] = are * ws.cg[i] + aim * ws.sg[i];
    ws.fd_im[i] = aim * ws.cg[i] - are * ws.sg[i];
  }

  for (std::size_t p = 0; p < np; ++p) {
    Panel& pl = panels[first + p];
    double h = 0.5 * (pl.b - pl.a);
    double ku_re = 0, ku_im = 0, kd_re = 0, kd_im = 0;
    double gu_re = 0, gu_im = 0, gd_re = 0, gd_im = 0;
    const std::size_t base = p * kNodes;
    for (int i = 0; i < kNodes; ++i) {
      double wk = nt.wk[i], wg = nt.wg[i];
      ku_re += wk * ws.fu_re[base + i];
      ku_im += wk * ws.fu_im[base + i];
      kd_re += wk * ws.fd_re[base + i];
      kd_im += wk * ws.fd_im[base + i];
      gu_re += wg * ws.fu_re[base + i];
      gu_im += wg * ws.fu_im[base + i];
      gd_re += wg * ws.fd_re[base + i];
      gd_im += wg * ws.fd_im[base + i];
    }
    pl.up = {h * ku_re, h * ku_im};
    pl.down = {h * kd_re, h * kd_im};
    pl.eu = h * std::hypot(ku_re - gu_re, ku_im - gu_im);
    pl.ed = h * std::hypot(kd_re - gd_re, kd_im - gd_im);
  }
}

// Local phase rate bound over both channels and the spatial factor.
double phase_rate(const Mode& m, const Trajectory& traj, double gap, double tau) {
  if (traj.kind == Trajectory::Kind::at_rest) return gap + m.omega;
  return gap + m.omega * std::exp(traj.accel * tau);
}

void initial_layout(std::vector<Panel>& panels, const Mode& m,
                    const Trajectory& traj, double gap, double a, double b,
                    double phase_per_panel, long panel_cap) {
  panels.clear();
  if (traj.kind == Trajectory::Kind::at_rest) {
    double rate = phase_rate(m, traj, gap, 0.0);
    long count = std::max<long>(1, (long)std::ceil((b - a) * rate / phase_per_panel));
    count = std::min(count, panel_cap);
    double w = (b - a) / (double)count;
    panels.reserve(count);
    for (long i = 0; i < count; ++i) {
      Panel p;
      p.a = a + i * w;
      p.b = (i + 1 == count) ? b : a + (i + 1) * w;
      panels.push_back(p);
    }
    return;
  }
  // Rate grows along the worldline: step greedily, refreshing the rate at
  // the far end of the proposed step.
  double tau = a;
  while (tau < b && (long)panels.size() < panel_cap) {
    double step = phase_per_panel / phase_rate(m, traj, gap, tau);
    step = phase_per_panel / phase_rate(m, traj, gap, std::min(tau + step, b));
    double next = std::min(tau + step, b);
    if (next <= tau) next = std::nextafter(tau, b);
    Panel p;
    p.a = tau;
    p.b = next;
    panels.push_back(p);
    tau = next;
  }
  if (!panels.empty()) panels.back().b = b;
}

}  // namespace

void CouplingWindow::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("coupling lambda must be positive and finite");
  if (duration < 0.0 || !std::isfinite(duration))
    throw std::invalid_argument("window duration must be >= 0 and finite");
}

void QuadratureOptions::validate() const {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance))
    throw std::invalid_argument("quadrature tolerance must be positive");
  if (panel_cap < 1) throw std::invalid_argument("panel cap must be >= 1");
}

std::complex<double> static_response(Channel ch, const Mode& mode,
                                     const CavityConfig& cavity, double x0,
                                     double gap, double duration) {
  std::complex<double> u = mode_function(mode.index, x0, cavity);
  double sgn = (ch == Channel::up) ? 1.0 : -1.0;
  double delta = sgn * gap + mode.omega;
  double T = duration;
  if (std::fabs(delta) <= 1e-9 * std::max(gap, mode.omega)) {
    double dt = delta * T;
    return u * std::complex<double>{T * (1.0 - dt * dt / 6.0), T * dt * 0.5};
  }
  double th = delta * T;
  double sh = std::sin(0.5 * th);
  // (e^{i th} - 1)/(i delta): real sin(th)/delta, imag 2 sin^2(th/2)/delta
  return u * std::complex<double>{std::sin(th) / delta, 2.0 * sh * sh / delta};
}

SegmentIntegral integrate_segment(const Mode& mode, const CavityConfig& cavity,
                                  const Trajectory& traj, double gap, double a,
                                  double b, double tol, long panel_cap) {
  if (!(b >= a)) throw std::invalid_argument("segment end precedes start");
  SegmentIntegral out;
  if (b == a) return out;

  // Hot path of accelerated sweeps (hundreds of thousands of calls); the
  // scratch buffers persist across calls.
  static thread_local std::vector<Panel> panels;
  static thread_local Workspace ws;
  initial_layout(panels, mode, traj, gap, a, b, kPhasePerPanel, panel_cap);
  eval_panels(panels, 0, mode, cavity, traj, gap, ws);

  for (int round = 0; round < 60; ++round) {
    double su = 0.0, sd = 0.0;
    for (const Panel& p : panels) {
      su += p.eu;
      sd += p.ed;
    }
    if (su <= tol && sd <= tol) break;
    if ((long)panels.size() >= panel_cap) break;

    double share = tol / (2.0 * (double)panels.size());
    std::vector<std::size_t> marked;
    for (std::size_t i = 0; i < panels.size(); ++i)
      if (panels[i].eu > share || panels[i].ed > share) marked.push_back(i);
    if (marked.empty()) {
      std::size_t worst = 0;
      double w = -1.0;
      for (std::size_t i = 0; i < panels.size(); ++i) {
        double e = std::max(panels[i].eu, panels[i].ed);
        if (e > w) {
          w = e;
          worst = i;
        }
      }
      marked.push_back(worst);
    }
    long room = panel_cap - (long)panels.size();
    if ((long)marked.size() > room) {
      std::sort(marked.begin(), marked.end(), [&](std::size_t l, std::size_t r) {
        return std::max(panels[l].eu, panels[l].ed) >
               std::max(panels[r].eu, panels[r].ed);
      });
      marked.resize(room);
    }

    static thread_local std::vector<Panel> next;
    next.clear();
    next.reserve(panels.size() + marked.size());
    std::vector<char> split(panels.size(), 0);
    for (std::size_t i : marked) split[i] = 1;
    std::size_t first_new = 0;
    for (std::size_t i = 0; i < panels.size(); ++i)
      if (!split[i]) next.push_back(panels[i]);
    first_new = next.size();
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (!split[i]) continue;
      double mid = 0.5 * (panels[i].a + panels[i].b);
      Panel l, r;
      l.a = panels[i].a;
      l.b = mid;
      r.a = mid;
      r.b = panels[i].b;
      next.push_back(l);
      next.push_back(r);
    }
    panels.swap(next);
    eval_panels(panels, first_new, mode, cavity, traj, gap, ws);
  }

  std::sort(panels.begin(), panels.end(),
            [](const Panel& l, const Panel& r) { return l.a < r.a; });
  for (const Panel& p : panels) {
    out.up += p.up;
    out.down += p.down;
    out.error_up += p.eu;
    out.error_down += p.ed;
  }
  out.panels = (long)panels.size();
  out.converged = out.error_up <= tol && out.error_down <= tol;
  return out;
}

ModeIntegrals compute_all(const CavityConfig& cavity, const Trajectory& traj,
                          double gap, double duration, int j_max,
                          const QuadratureOptions& opts) {
  cavity.validate();
  traj.validate(cavity);
  opts.validate();
  if (!(gap > 0.0) || !std::isfinite(gap))
    throw std::invalid_argument("detector gap must be positive and finite");
  if (duration < 0.0 || !std::isfinite(duration))
    throw std::invalid_argument("window duration must be >= 0 and finite");

  ModeIntegrals out;
  out.gap = gap;
  out.modes = build_modes(cavity, j_max);
  out.up.assign(j_max, {0.0, 0.0});
  out.down.assign(j_max, {0.0, 0.0});
  out.error.assign(j_max, 0.0);
  out.method.assign(j_max, Method::closed_form);

  if (duration == 0.0) return out;

  const bool rest = traj.kind == Trajectory::Kind::at_rest;
  if (!rest) {
    double tmax = max_proper_time(traj, cavity);
    if (duration > tmax * (1.0 + 1e-9))
      throw std::domain_error("worldline exits the cavity at proper time " +
                              std::to_string(tmax) + ", before duration " +
                              std::to_string(duration));
  }

  for (int j = 1; j <= j_max; ++j) {
    const Mode& m = out.modes[j - 1];
    if (rest) {
      out.up[j - 1] = static_response(Channel::up, m, cavity, traj.x0, gap, duration);
      out.down[j - 1] =
          static_response(Channel::down, m, cavity, traj.x0, gap, duration);
      continue;
    }
    SegmentIntegral seg = integrate_segment(m, cavity, traj, gap, 0.0, duration,
                                            opts.tolerance, opts.panel_cap);
    out.up[j - 1] = seg.up;
    out.down[j - 1] = seg.down;
    out.error[j - 1] = std::max(seg.error_up, seg.error_down);
    out.method[j - 1] = Method::quadrature;
    if (!seg.converged) out.converged = false;
  }
  return out;
}

}  // namespace landauer
