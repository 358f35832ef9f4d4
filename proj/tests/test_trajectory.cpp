#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "landauer/trajectory.hpp"

using namespace landauer;

TEST_CASE("rest worldline is trivial") {
  Trajectory tr = Trajectory::at_rest(0.4);
  Event e = eval(tr, 1.7);
  CHECK(e.t == 1.7);
  CHECK(e.x == 0.4);
  e = eval(tr, 0.0);
  CHECK(e.t == 0.0);
  CavityConfig cav;
  cav.length = 1.0;
  CHECK(std::isinf(max_proper_time(tr, cav)));
}

TEST_CASE("accelerated worldline launches from the origin") {
  Trajectory tr = Trajectory::accelerated(50.0);
  Event e = eval(tr, 0.0);
  CHECK(e.t == 0.0);
  CHECK(e.x == 0.0);
}

TEST_CASE("accelerated worldline stays on its hyperbola") {
  double a = 50.0;
  Trajectory tr = Trajectory::accelerated(a);
  for (double tau : {1e-4, 1e-3, 0.01, 0.03, 0.07, 0.11, 0.114}) {
    Event e = eval(tr, tau);
    double lhs = (e.x + 1.0 / a) * (e.x + 1.0 / a) - e.t * e.t;
    CHECK(lhs == doctest::Approx(1.0 / (a * a)).epsilon(1e-12));
    CHECK(e.x >= 0.0);
    CHECK(e.t > 0.0);
  }
  // Coordinate time runs ahead of proper time.
  CHECK(eval(tr, 0.05).t > 0.05);
}

TEST_CASE("accelerated position is accurate at tiny proper time") {
  // x = 2 sinh^2(a tau / 2)/a has no cancellation, unlike (cosh - 1)/a.
  double a = 50.0;
  Trajectory tr = Trajectory::accelerated(a);
  double tau = 1e-8;
  double x = eval(tr, tau).x;
  double leading = 0.5 * a * tau * tau;
  CHECK(x > 0.0);
  CHECK(x == doctest::Approx(leading).epsilon(1e-10));
}

TEST_CASE("cavity crossing time") {
  CavityConfig cav;
  cav.length = 3.0;
  Trajectory tr = Trajectory::accelerated(50.0);
  double tmax = max_proper_time(tr, cav);
  CHECK(tmax == doctest::Approx(0.11420832105526305).epsilon(1e-15));
  CHECK(eval(tr, tmax).x == doctest::Approx(cav.length).epsilon(1e-12));
  // arccosh(a L + 1)/a, checked against the coordinate form.
  CHECK(tmax == doctest::Approx(std::acosh(50.0 * 3.0 + 1.0) / 50.0)
                    .epsilon(1e-15));
}

TEST_CASE("trajectory validation") {
  CavityConfig cav;
  cav.length = 2.0;
  CHECK_NOTHROW(Trajectory::at_rest(0.0).validate(cav));
  CHECK_NOTHROW(Trajectory::at_rest(2.0).validate(cav));
  CHECK_THROWS_AS(Trajectory::at_rest(-0.1).validate(cav),
                  std::invalid_argument);
  CHECK_THROWS_AS(Trajectory::at_rest(2.1).validate(cav),
                  std::invalid_argument);
  CHECK_NOTHROW(Trajectory::accelerated(1e-3).validate(cav));
  CHECK_THROWS_AS(Trajectory::accelerated(0.0).validate(cav),
                  std::invalid_argument);
  CHECK_THROWS_AS(Trajectory::accelerated(-5.0).validate(cav),
                  std::invalid_argument);
}
