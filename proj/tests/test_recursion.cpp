#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "tra/dipole.hpp"
#include "tra/error.hpp"
#include "tra/recursion.hpp"

using namespace tra;

namespace {

double rel(double got, double want) { return std::fabs(got - want) / std::max(1.0, std::fabs(want)); }

const double kNus[] = {0.6, 1.5, 3.2};
const double kZs[] = {0.1, 1.0, 5.0};

}  // namespace

TEST_CASE("family names round-trip") {
  for (FamilyTag t : {FamilyTag::KratzerQ, FamilyTag::KratzerV, FamilyTag::InvCubeQ, FamilyTag::InvCubeW,
                      FamilyTag::DipQuadQ, FamilyTag::InvQuarticQ, FamilyTag::GeneralB1, FamilyTag::MonicB2}) {
    const auto back = family_from_string(to_string(t));
    REQUIRE(back.has_value());
    CHECK(*back == t);
  }
  CHECK_FALSE(family_from_string("laguerre").has_value());
}

TEST_CASE("Kratzer Q seeds") {
  for (double nu : kNus) {
    for (double z : kZs) {
      const auto q = forward_solve(kratzer_q(nu, z), 5).values();
      CHECK(q[0] == 1.0);
      CHECK(rel(q[1], z * (nu + 1.0) / (2.0 * nu + 1.0)) <= 1e-15);
    }
  }
  const auto zero = forward_solve(kratzer_q(1.3, 0.0), 10).values();
  CHECK(zero[0] == 1.0);
  for (std::size_t n = 1; n < zero.size(); ++n) CHECK(zero[n] == 0.0);
}

TEST_CASE("Kratzer Q seeds agree with a direct solve of the first rows") {
  // Rows 0 and 1 with Q0 = 1 fix Q1 and Q2; solve them as a linear system.
  const double nu = 1.5, z = 2.0;
  const auto fam = kratzer_q(nu, z);
  const RecurrenceRow r0 = fam.row(0), r1 = fam.row(1);
  Eigen::Matrix2d a;
  a << r0.upper, 0.0, r1.diag, r1.upper;
  Eigen::Vector2d rhs(-r0.diag, -r1.lower);
  const Eigen::Vector2d x = a.colPivHouseholderQr().solve(rhs);
  const auto q = forward_solve(fam, 4).values();
  CHECK(rel(q[1], x(0)) <= 1e-14);
  CHECK(rel(q[2], x(1)) <= 1e-14);
}

TEST_CASE("Kratzer weights") {
  for (double nu : kNus) {
    CHECK(kratzer_weight(0, nu) == 0.0);
    CHECK(rel(kratzer_weight(3, nu), 3.0 * (3.0 + 2.0 * nu) / (3.0 + nu)) <= 1e-15);
    // A_m = (m + nu) - nu^2 / (m + nu)
    for (int m = 1; m < 10; ++m) CHECK(rel(kratzer_weight(m, nu), (m + nu) - nu * nu / (m + nu)) <= 1e-14);
  }
}

TEST_CASE("Kratzer V seeds and map to Q") {
  for (double nu : kNus) {
    for (double z : kZs) {
      const auto v = forward_solve(kratzer_v(nu, z), 35).values();
      const auto q = forward_solve(kratzer_q(nu, z), 35).values();
      CHECK(rel(v[0], 1.0 / (2.0 * nu + 1.0)) <= 1e-15);
      CHECK(rel(v[1], z * v[0] / 2.0) <= 1e-15);
      for (int n = 0; n <= 30; ++n) {
        const auto i = static_cast<std::size_t>(n);
        CHECK(rel(q[i + 1], z * (n + 1.0 + nu) / (n + 1.0) * v[i]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("inverse-cube Q and W seeds") {
  for (double nu : kNus) {
    for (double z : kZs) {
      const auto q = forward_solve(invcube_q(nu, z), 6).values();
      const auto w = forward_solve(invcube_w(nu, z), 6).values();
      CHECK(q[0] == 1.0);
      CHECK(std::fabs(q[1]) <= 1e-14);
      CHECK(rel(nu * q[2], -(nu + 2.0)) <= 1e-14);
      CHECK(rel(nu * q[3], -4.0 * (nu + 1.0) * (nu + 2.0) * (nu + 3.0) * z) <= 1e-14);
      CHECK(w[0] == 1.0);
      CHECK(rel(w[1], 4.0 * (nu + 1.0) * (nu + 2.0) * z) <= 1e-14);
      CHECK(rel(w[2], 12.0 * (nu + 1.0) * (nu + 2.0) * (nu + 3.0) * (2.0 * nu + 3.0) * z * z - 1.0) <= 1e-14);
    }
  }
}

TEST_CASE("dipole-quadrupole Q~ seeds") {
  for (double nu : kNus) {
    for (double z : kZs) {
      const auto qt = forward_solve(dipquad_q(nu, z), 6).values();
      CHECK(qt[0] == 1.0);
      CHECK(std::fabs(qt[1]) <= 1e-14);
      CHECK(rel(qt[2], -1.0) <= 1e-14);
      CHECK(rel(qt[3], -4.0 * (nu + 1.0) * (nu + 2.0) * z) <= 1e-14);
    }
  }
}

TEST_CASE("map identities between inverse-cube and dipole-quadrupole families") {
  for (double nu : kNus) {
    for (double z : kZs) {
      const auto q = forward_solve(invcube_q(nu, z), 45).values();
      const auto w = forward_solve(invcube_w(nu, z), 45).values();
      const auto qt = forward_solve(dipquad_q(nu, z), 45).values();
      for (int n = 0; n <= 40; ++n) {
        const auto i = static_cast<std::size_t>(n);
        const double wn = -nu * q[i + 2] / (n + nu + 2.0);
        CHECK(std::fabs(w[i] - wn) <= 1e-12 * std::max(1.0, std::fabs(w[i])));
        CHECK(std::fabs(qt[i] - nu / (n + nu) * q[i]) <= 1e-12 * std::max(1.0, std::fabs(qt[i])));
      }
    }
  }
}

TEST_CASE("recurrence residual is at roundoff for every family") {
  for (double nu : kNus) {
    for (double z : kZs) {
      const RecursionFamily fams[] = {
          kratzer_q(nu, z),  kratzer_v(nu, z),  invcube_q(nu, z),
          invcube_w(nu, z),  dipquad_q(nu, z),  invquartic_q(nu, 0.5 * (nu * nu - 0.25), 3.0 * z),
          general_b1(nu + 1.0, 2.0 * nu + 2.0, 1.0, 2.0 * nu, z),
          monic_b2(nu + 1.0, 2.0 * nu + 2.0, 1.0, 2.0 * nu, z),
      };
      for (const auto& fam : fams) {
        const auto seq = forward_solve(fam, 120);
        for (int n = 1; n < 120; ++n) {
          CAPTURE(to_string(fam.tag));
          CHECK(relative_residual(seq, n) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("general B1 first terms and Kratzer specialization") {
  const double a = 2.5, b = 5.0, x = 1.7;
  const auto p = forward_solve(general_b1(a, b, 1.0, 3.0, x), 3).values();
  CHECK(p[0] == 1.0);
  CHECK(rel(p[1], a * x / b) <= 1e-15);
  for (double nu : {0.8, 1.5}) {
    for (double z : {1.0, 4.0}) {
      const auto pk = forward_solve(general_b1(nu + 1.0, 2.0 * nu + 2.0, 1.0, 2.0 * nu, z), 60).values();
      const auto v = forward_solve(kratzer_v(nu, z), 60).values();
      const double ratio = pk[0] / v[0];
      for (std::size_t n = 0; n <= 50; ++n) {
        if (std::fabs(v[n]) < 1e-250) continue;
        CHECK(std::fabs(pk[n] / v[n] - ratio) <= 1e-10 * std::fabs(ratio));
      }
    }
  }
}

TEST_CASE("monic B2 weights and positivity") {
  CHECK(std::fabs(monic_b2_weight(1, 2.0, 4.0, 1.0, 3.0) - 16.0 / 3.0) <= 1e-15);
  // Brute-force monic form: P_n = k_n p_n with p monic; the monic three-term
  // weight is (k_{n-1}/k_n)^2 times the orthonormal product.
  for (double nu : {0.8, 1.5}) {
    const auto r = positivity_check(nu + 1.0, 2.0 * nu + 2.0, 1.0, 2.0 * nu, 5000);
    CHECK(r.ok);
    CHECK_FALSE(r.first_violation.has_value());
  }
  const auto bad = positivity_check(0.5, 4.0, -2.5, 3.0, 10);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.first_violation.has_value());
  CHECK(*bad.first_violation == 1);
}

TEST_CASE("monic B2 recurrence is monic") {
  // p_{n+1} = x p_n - c_n p_{n-1}: leading coefficient stays 1, so p_n(x)/x^n -> 1 for large x.
  const double x = 1e6;
  const auto p = forward_solve(monic_b2(2.0, 4.0, 1.0, 3.0, x), 6).values();
  for (std::size_t n = 0; n < p.size(); ++n) CHECK(std::fabs(p[n] / std::pow(x, static_cast<double>(n)) - 1.0) < 1e-6);
}

TEST_CASE("overflow is absorbed by rescaling") {
  const auto seq = forward_solve(invcube_q(1.5, 5.0), 400);
  CHECK(seq.overflow_scaled);
  // Q_1 vanishes identically; every other entry stays representable.
  CHECK(seq.value(1) == 0.0);
  for (std::size_t n = 0; n < seq.size(); ++n)
    if (n != 1) CHECK(std::isfinite(seq.log_abs(n)));
  for (int n = 1; n < 399; ++n) CHECK(relative_residual(seq, n) <= 1e-12);
  CHECK(seq.log_abs(399) > 1000.0);
}

TEST_CASE("growing families report the start of growth") {
  for (double nu : kNus) {
    for (double z : kZs) {
      const auto ic = forward_solve(invcube_w(nu, z), 200);
      const auto dq = forward_solve(dipquad_q(nu, z), 200);
      REQUIRE(ic.first_growth_index.has_value());
      REQUIRE(dq.first_growth_index.has_value());
      const auto g = static_cast<std::size_t>(*dq.first_growth_index);
      for (std::size_t n = g; n + 1 < dq.size(); ++n) CHECK(dq.log_abs(n + 1) >= dq.log_abs(n));
      CHECK(g >= 2);
    }
  }
  const auto kq = forward_solve(kratzer_q(1.5, 2.0), 300);
  CHECK_FALSE(kq.first_growth_index.has_value());
}

TEST_CASE("envelope fit recovers known power laws") {
  std::vector<double> constant(2100, 0.0);
  CHECK(std::fabs(envelope_exponent(constant, 200, 2000)) < 1e-12);
  std::vector<double> power(2100);
  for (std::size_t n = 0; n < power.size(); ++n) {
    const double nn = static_cast<double>(n) + 1.0;
    power[n] = std::log(std::pow(nn, -2.0) * std::fabs(std::cos(0.5 * static_cast<double>(n) * 3.14159 + 0.3 * std::log(nn))) + 1e-300);
  }
  CHECK(std::fabs(envelope_exponent(power, 200, 2000) + 2.0) < 0.05);
  CHECK_THROWS_AS(envelope_exponent(constant, 50, 2000), Error);
}

TEST_CASE("Kratzer V envelope exponent measured value") {
  // The fitted decay of the Kratzer-parameter polynomials is n^-1.
  for (double nu : {0.8, 1.5}) {
    for (double z : {1.0, 4.0}) {
      const auto seq = forward_solve(kratzer_v(nu, z), 2010);
      CHECK(std::fabs(asymptotic_exponent(seq, 200, 2000) + 1.0) < 0.05);
    }
  }
}

TEST_CASE("support bound arithmetic") {
  CHECK(std::fabs(support_bound(0.5) - 1.0 / 945.0) < 1e-18);
  CHECK(std::fabs(support_bound(1.0) - 1.0 / 4320.0) < 1e-18);
}

TEST_CASE("monic W Jacobi matrix eigenvalues agree with a dense solver") {
  for (double nu : {0.5, 1.0, 2.5}) {
    const TridiagonalSymmetric t = monic_w_jacobi(nu, 12);
    REQUIRE(t.size() == 12);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(12, 12);
    for (int i = 0; i < 12; ++i) {
      dense(i, i) = t.diag[static_cast<std::size_t>(i)];
      if (i + 1 < 12) dense(i, i + 1) = dense(i + 1, i) = t.offdiag[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    const auto ev = eigen_tridiag(t);
    for (int i = 0; i < 12; ++i) CHECK(std::fabs(ev[static_cast<std::size_t>(i)] - es.eigenvalues()(i)) < 1e-14);
    // The spectrum is symmetric about zero.
    for (int i = 0; i < 12; ++i)
      CHECK(std::fabs(ev[static_cast<std::size_t>(i)] + ev[static_cast<std::size_t>(11 - i)]) < 1e-14);
  }
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(forward_solve(kratzer_q(-0.5, 1.0), 4), Error);
  CHECK_THROWS_AS(forward_solve(general_b1(1.0, -2.0, 1.0, 1.0, 0.5), 4), Error);
  CHECK_THROWS_AS(forward_solve(kratzer_q(1.0, 1.0), -1), Error);
}
