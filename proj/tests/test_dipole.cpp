#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "tra/dipole.hpp"
#include "tra/error.hpp"

using namespace tra;

namespace {

Eigen::VectorXd dense_eigenvalues(const TridiagonalSymmetric& t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = t.diag[static_cast<std::size_t>(i)];
    if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = t.offdiag[static_cast<std::size_t>(i)];
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace

TEST_CASE("matrix entries") {
  const auto t0 = build_T(0.0, 2, 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(t0.diag[static_cast<std::size_t>(i)] == (i + 2.5) * (i + 2.5));
    if (i < 5) CHECK(t0.offdiag[static_cast<std::size_t>(i)] == 0.0);
  }
  const auto t1 = build_T(1.0, 1, 4);
  CHECK(std::fabs(t1.offdiag[0] + std::sqrt(0.8)) < 1e-15);
  const auto tm0 = build_T(1.0, 0, 4);
  CHECK(std::fabs(tm0.offdiag[0] + 2.0 / std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("truncations nest") {
  const auto big = build_T(1.7, 1, 12), small = build_T(1.7, 1, 11);
  for (std::size_t i = 0; i < 11; ++i) CHECK(big.diag[i] == small.diag[i]);
  for (std::size_t i = 0; i < 10; ++i) CHECK(big.offdiag[i] == small.offdiag[i]);
}

TEST_CASE("eigen_tridiag elementary cases") {
  TridiagonalSymmetric diag{{3.0, -1.0, 2.0}, {0.0, 0.0}};
  const auto ev = eigen_tridiag(diag);
  CHECK(ev == std::vector<double>{-1.0, 2.0, 3.0});
  const double a = 1.3, b = -0.4, c = 0.9;
  const auto ev2 = eigen_tridiag({{a, b}, {c}});
  const double mid = 0.5 * (a + b), rad = std::sqrt(0.25 * (a - b) * (a - b) + c * c);
  CHECK(std::fabs(ev2[0] - (mid - rad)) < 1e-15);
  CHECK(std::fabs(ev2[1] - (mid + rad)) < 1e-15);
  CHECK(eigenvalue({{a, b}, {c}}, 1) == ev2[1]);
}

TEST_CASE("eigen_tridiag agrees with a dense solver") {
  for (double d : {0.3, 2.0, 7.5}) {
    for (int m : {0, 1, 3}) {
      const auto t = build_T(d, m, 60);
      const auto ev = eigen_tridiag(t);
      const Eigen::VectorXd ref = dense_eigenvalues(t);
      for (int i = 0; i < 60; ++i)
        CHECK(std::fabs(ev[static_cast<std::size_t>(i)] - ref(i)) <= 1e-12 * std::max(1.0, std::fabs(ref(i))));
    }
  }
}

TEST_CASE("d = 0 spectrum is exact") {
  for (int m : {0, 1, 4}) {
    const auto s = chi_values(0.0, m, 40);
    for (int i = 0; i < 40; ++i) {
      CHECK(s.eigenvalues[static_cast<std::size_t>(i)] == (i + m + 0.5) * (i + m + 0.5));
      CHECK(s.chi[static_cast<std::size_t>(i)] == static_cast<double>(i + m));
    }
  }
}

TEST_CASE("trace identity") {
  for (int n : {10, 50, 200}) {
    for (double d : {0.5, 2.0, 6.0}) {
      const auto ev = eigen_tridiag(build_T(d, 1, n));
      double trace = 0.0;
      for (int i = 0; i < n; ++i) trace += (i + 1.5) * (i + 1.5);
      const double sum = std::accumulate(ev.begin(), ev.end(), 0.0);
      CHECK(std::fabs(sum - trace) <= 1e-9 * trace);
    }
  }
}

TEST_CASE("Cauchy interlacing") {
  for (int n = 3; n <= 30; ++n) {
    const auto big = eigen_tridiag(build_T(2.5, 0, n));
    const auto small = eigen_tridiag(build_T(2.5, 0, n - 1));
    for (int i = 0; i + 1 < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      CHECK(big[k] <= small[k] + 1e-12);
      CHECK(small[k] <= big[k + 1] + 1e-12);
    }
  }
}

TEST_CASE("lowest eigenvalue converges in the truncation") {
  const double l60 = eigenvalue(build_T(2.0, 1, 60), 0);
  const double l120 = eigenvalue(build_T(2.0, 1, 120), 0);
  CHECK(std::fabs(l60 - l120) < 1e-10);
  const auto c = converged_chi(2.0, 1);
  CHECK(std::fabs(c.chi - 0.7328234698730993) < 1e-12);
  CHECK(std::fabs(c.eigenvalue - 1.51985371) < 1e-8);
  CHECK(c.change < 1e-10);
}

TEST_CASE("lowest eigenvalue decreases with d") {
  double prev = eigenvalue(build_T(0.0, 1, 80), 0);
  for (double d = 0.25; d <= 6.0; d += 0.25) {
    const double cur = eigenvalue(build_T(d, 1, 80), 0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("supercritical and critical dipole") {
  const auto s = chi_values(1.0, 0, 40);
  CHECK(s.supercritical[0]);
  CHECK(std::isnan(s.chi[0]));
  CHECK_FALSE(s.supercritical[1]);
  try {
    (void)converged_chi(1.0, 0);
    FAIL("expected a supercritical error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Supercritical);
    CHECK(std::string(e.what()).find("increase |m|") != std::string::npos);
  }
  const double d0 = critical_dipole(0, 200, 1e-8).d_max;
  const double d0b = critical_dipole(0, 400, 1e-8).d_max;
  CHECK(std::fabs(d0 - 0.6393148772) < 1e-7);
  CHECK(std::fabs(d0 - d0b) < 1e-6);
  const double d1 = critical_dipole(1, 200, 1e-8).d_max;
  CHECK(std::fabs(d1 - 3.7919679268) < 1e-7);
  CHECK(d1 > d0);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(build_T(1.0, -1, 10), Error);
  CHECK_THROWS_AS(build_T(1.0, 0, 1), Error);
  CHECK_THROWS_AS(build_T(-1.0, 0, 10), Error);
  CHECK_THROWS_AS(eigenvalue(build_T(1.0, 0, 4), 4), Error);
}
