#include "pinnc/contact.hpp"

#include <doctest.h>

#include <cmath>

using namespace pinnc;

TEST_CASE("gap evaluation") {
  CHECK(gap(0.02, -0.005, -1.0) == doctest::Approx(0.015).epsilon(1e-14));
  CHECK(gap(0.01, -0.01, -0.8) == doctest::Approx(0.0));
  CHECK(gap(0.005, 0.005, -0.5) == doctest::Approx(0.02).epsilon(1e-14));
  CHECK_THROWS_AS(gap(0.1, 0.0, 1e-13), std::domain_error);
}

TEST_CASE("traction decomposition") {
  {
    const auto [pn, tt] = traction_decompose({0.0, -0.1, 0.0}, {0, -1}, {1, 0});
    CHECK(pn == doctest::Approx(-0.1).epsilon(1e-14));
    CHECK(tt == doctest::Approx(0.0));
  }
  {
    const auto [pn, tt] = traction_decompose({0, 0, 0}, {0, -1}, {1, 0});
    CHECK(pn == 0.0);
    CHECK(tt == 0.0);
  }
  {
    // Adhesive state: positive normal traction.
    const auto [pn, tt] = traction_decompose({1.0, 1.0, 0.0}, {0, -1}, {1, 0});
    CHECK(pn == doctest::Approx(1.0));
    CHECK(tt == doctest::Approx(0.0));
  }
}

TEST_CASE("Fischer-Burmeister function") {
  CHECK(fischer_burmeister(0, 0) == 0.0);
  CHECK(fischer_burmeister(3, 4) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(fischer_burmeister(-1, 0) == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("KKT losses on single points") {
  Eigen::VectorXd g(1), p(1);

  SUBCASE("admissible separated state vanishes for all methods") {
    g << 0.5;
    p << 0.0;
    CHECK(kkt_loss(KktMethod::sign_based(), g, p) == 0.0);
    CHECK(kkt_loss(KktMethod::sigmoid_based(), g, p) ==
          doctest::Approx(0.0).epsilon(1e-4));
    CHECK(kkt_loss(KktMethod::fischer_burmeister_based(), g, p) == 0.0);
  }

  SUBCASE("sign-based penetration") {
    g << -0.2;
    p << 0.0;
    CHECK(kkt_loss(KktMethod::sign_based(1, 1, 1), g, p) ==
          doctest::Approx(0.04).epsilon(1e-14));
  }

  SUBCASE("sigmoid-based penetration") {
    g << -0.1;
    p << 0.0;
    const double gate = 1.0 / (1.0 + std::exp(-1.0));  // 0.7311
    const double expected = gate * 0.1 * gate * 0.1;
    const double loss = kkt_loss(KktMethod::sigmoid_based(10, 100), g, p);
    CHECK(loss == doctest::Approx(expected).epsilon(1e-12));
    CHECK(loss == doctest::Approx(5.345e-3).epsilon(1e-3));
  }

  SUBCASE("FB with active compressive contact") {
    g << 0.0;
    p << -0.3;
    CHECK(kkt_loss(KktMethod::fischer_burmeister_based(), g, p) == 0.0);
  }
}

TEST_CASE("frictionless sliding loss") {
  Eigen::VectorXd t0 = Eigen::VectorXd::Zero(5);
  CHECK(fs_loss(t0, 1.0) == 0.0);

  Eigen::VectorXd t1(1);
  t1 << 0.05;
  CHECK(fs_loss(t1, 1.0) == doctest::Approx(2.5e-3).epsilon(1e-14));

  Eigen::VectorXd t2(2);
  t2 << 0.1, -0.1;
  CHECK(fs_loss(t2, 2.0) == doctest::Approx(0.02).epsilon(1e-14));
}

TEST_CASE("FB zero set equals the KKT set on a brute-force grid") {
  // 81 x 81 grid over (g, p) in [-2, 2]^2 including the axes exactly.
  int zero_count = 0;
  for (int i = 0; i <= 80; ++i) {
    for (int j = 0; j <= 80; ++j) {
      const double g = -2.0 + 0.05 * i;
      const double p = -2.0 + 0.05 * j;
      const double phi = fischer_burmeister(g, -p);
      const bool kkt_ok = g >= 0.0 && p <= 0.0 && std::abs(g * p) <= 1e-12;
      if (kkt_ok) {
        CHECK(std::abs(phi) <= 1e-12);
        ++zero_count;
      } else {
        CHECK(std::abs(phi) > 1e-12);
      }
    }
  }
  CHECK(zero_count == 81);  // both half-axes, origin counted once
}

TEST_CASE("sigmoid gates approach the sign gates for large steepness") {
  // At delta = 1e6 the gates agree to 1e-9 once delta * |arg| >= 25; at
  // |arg| = 1e-5 the exact gate value is e^{-10} ~ 4.5e-5, which bounds the
  // deviation there.
  const double delta = 1e6;
  for (double mag : {2.5e-5, 1e-4, 1e-3, 0.1, 2.0}) {
    for (double s : {-1.0, 1.0}) {
      const double arg = s * mag;
      CHECK(std::abs(sigmoid_gate_gap(arg, delta) - sign_gate_gap(arg)) <= 1e-9);
      CHECK(std::abs(sigmoid_gate_pressure(arg, delta) - sign_gate_pressure(arg)) <= 1e-9);
    }
  }
  for (double s : {-1.0, 1.0}) {
    const double arg = s * 1e-5;
    CHECK(std::abs(sigmoid_gate_gap(arg, delta) - sign_gate_gap(arg)) <= 5e-5);
  }
}

TEST_CASE("all three losses vanish exactly on admissible states") {
  Eigen::VectorXd g(3), p(3);
  g << 0.0, 0.7, 0.0;   // active, separated, active
  p << -0.4, 0.0, 0.0;  // compressive, free, grazing
  for (const auto& method :
       {KktMethod::sign_based(), KktMethod::sigmoid_based(1e7, 1e7),
        KktMethod::fischer_burmeister_based()}) {
    CHECK(kkt_loss(method, g, p) <= 1e-12);
  }
}

TEST_CASE("FB squared is differentiable at the origin, the sign gate is not") {
  // Central differences of phi^2 along several directions converge to 0.
  for (const auto dir : {std::pair{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {-1.0, 0.3}}) {
    double prev = 1e300;
    for (double h : {1e-3, 1e-4, 1e-5, 1e-6}) {
      const auto f = [&](double t) {
        const double phi = fischer_burmeister(t * dir.first, t * dir.second);
        return phi * phi;
      };
      const double central = (f(h) - f(-h)) / (2.0 * h);
      CHECK(std::abs(central) < prev + 1e-12);
      prev = std::abs(central);
    }
    CHECK(prev <= 1e-5);  // slope converges to zero: no gradient jump
  }

  // The unsquared sign-gated term (1 - sgn(g))/2 * g has one-sided slopes
  // 1 (from the left) and 0 (from the right) at g = 0.
  const auto gated = [](double g) { return sign_gate_gap(g) * g; };
  const double h = 1e-7;
  const double right = (gated(h) - gated(0.0)) / h;
  const double left = (gated(0.0) - gated(-h)) / h;
  CHECK(right == doctest::Approx(0.0));
  CHECK(left == doctest::Approx(1.0));
  CHECK(std::abs(right - left) > 0.5);
}

TEST_CASE("quadrant dominance of the FB penalty") {
  // Among the four sign quadrants at |g| = |p| = 1, penetration with
  // adhesion (g < 0, p > 0) is penalized hardest.
  const auto fb2 = [](double g, double p) {
    const double phi = fischer_burmeister(g, -p);
    return phi * phi;
  };
  const double worst = fb2(-1.0, 1.0);
  CHECK(worst > fb2(-1.0, -1.0));
  CHECK(worst > fb2(1.0, 1.0));
  CHECK(worst > fb2(1.0, -1.0));
}

TEST_CASE("kkt point derivatives match finite differences") {
  const KktMethod methods[3] = {KktMethod::sign_based(1.0, 2.0, 0.5),
                                KktMethod::sigmoid_based(10, 100, 1, 1, 1),
                                KktMethod::fischer_burmeister_based(2.0)};
  // Away from the gate discontinuities the hand-written derivatives must
  // agree with finite differences.
  const double samples[4][2] = {{0.3, -0.2}, {-0.4, 0.1}, {0.2, 0.4}, {-0.1, -0.3}};
  for (const auto& method : methods) {
    for (const auto& s : samples) {
      double dg = 0.0, dp = 0.0;
      kkt_point_derivative(method, s[0], s[1], dg, dp);
      const double h = 1e-7;
      const double fdg = (kkt_point_value(method, s[0] + h, s[1]) -
                          kkt_point_value(method, s[0] - h, s[1])) /
                         (2 * h);
      const double fdp = (kkt_point_value(method, s[0], s[1] + h) -
                          kkt_point_value(method, s[0], s[1] - h)) /
                         (2 * h);
      CHECK(dg == doctest::Approx(fdg).epsilon(1e-5));
      CHECK(dp == doctest::Approx(fdp).epsilon(1e-5));
    }
  }
}
