#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles/oracles.hpp"
#include "tra/error.hpp"
#include "tra/validation.hpp"

using namespace tra;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("Weber-Schafheitlin closed form") {
  CHECK(std::fabs(weber_schafheitlin_closed(1.3, 0, 0, 1.0) - 0.5 / 1.3) <= 1e-15);
  for (double nu : {0.5, 1.3, 2.7}) CHECK(weber_schafheitlin_closed(nu, 0, 2, 1.0) == 0.0);
  // int J_nu J_{nu+1} / x = 1/(pi (nu + 1/2))
  CHECK(std::fabs(weber_schafheitlin_closed(1.3, 0, 1, 1.0) - 1.0 / (kPi * 1.8)) <= 1e-15);
}

TEST_CASE("numeric Bessel product integrals match mpmath quadrature") {
  for (const auto& row : oracle::kBesselProduct) {
    const IntegralResult r = bessel_product_integral(row.a, row.b, row.mu);
    CAPTURE(row.a);
    CAPTURE(row.b);
    CAPTURE(row.mu);
    CHECK(std::fabs(r.numeric - row.value) <= std::max(1e-9, r.tail_bound));
  }
}

TEST_CASE("numeric integral agrees with the closed form") {
  for (double nu : {0.5, 1.3}) {
    for (int n = 0; n <= 3; ++n) {
      for (int m = 0; m <= 3; ++m) {
        const IntegralResult r = weber_schafheitlin(nu, n, m, 1.0);
        CHECK(r.abs_error <= std::max(1e-8, r.tail_bound));
        CHECK(r.closed_form == weber_schafheitlin_closed(nu, n, m, 1.0));
      }
    }
  }
  const IntegralResult half = weber_schafheitlin(1.3, 1, 2, 0.5);
  CHECK(half.abs_error <= std::max(1e-8, half.tail_bound));
}

TEST_CASE("band-vanishing pattern") {
  for (double nu : {0.5, 1.3, 2.7}) {
    for (int n = 0; n <= 4; ++n) {
      for (int m = n + 2; m <= 6; m += 2) {
        CHECK(weber_schafheitlin_closed(nu, n, m, 1.0) == 0.0);
        CHECK(std::fabs(weber_schafheitlin(nu, n, m, 1.0).numeric) <= 1e-8);
      }
    }
  }
}

TEST_CASE("numeric integral is independent of the segment count") {
  QuadratureOptions fine;
  fine.segments_per_pi = 4;
  for (double nu : {0.5, 2.7}) {
    for (ParityPair p : {ParityPair::KK, ParityPair::KJ, ParityPair::KJUnit}) {
      const double a = ortho_check(p, nu, 1, 2).numeric;
      const double b = ortho_check(p, nu, 1, 2, fine).numeric;
      CHECK(std::fabs(a - b) <= 1e-9);
    }
  }
}

TEST_CASE("equal-index forms agree") {
  for (double nu : {0.5, 1.3, 2.7}) {
    for (int n : {0, 1, 3}) {
      for (double mu : {0.5, 1.0, 1.5, 2.5}) {
        if (!(mu < 2.0 * n + 2.0 * nu + 1.0)) continue;
        const double a = equal_index_form_a(nu, n, mu), b = equal_index_form_b(nu, n, mu);
        CHECK(std::fabs(a - b) <= 1e-12 * std::fabs(a));
        CHECK(std::fabs(a - weber_schafheitlin_closed(nu, n, n, mu)) <= 1e-12 * std::fabs(a));
      }
    }
  }
}

TEST_CASE("orthogonality closed forms") {
  CHECK(ortho_closed(ParityPair::KK, 1.3, 0, 0) == doctest::Approx(0.5 / 1.3).epsilon(1e-15));
  CHECK(ortho_closed(ParityPair::KJUnit, 1.3, 0, 0) == 0.5);
  CHECK(ortho_closed(ParityPair::KJUnit, 1.3, 1, 0) == 0.5);
  CHECK(ortho_closed(ParityPair::KJUnit, 1.3, 0, 1) == -0.5);
  CHECK(std::fabs(ortho_closed(ParityPair::KJ, 1.3, 0, 1) + 1.0 / (2.0 * kPi * 2.8 * 1.5)) <= 1e-16);
  CHECK(cross_sign(0, 0) == 1);
  CHECK(cross_sign(1, 2) == -1);
  CHECK(cross_sign(2, 1) == 1);
}

TEST_CASE("every orthogonality check passes") {
  for (double nu : {0.5, 1.3, 2.7}) {
    for (ParityPair p : {ParityPair::KK, ParityPair::JJ, ParityPair::KJ, ParityPair::KJUnit}) {
      for (int n = 0; n <= 4; ++n) {
        for (int m = 0; m <= 4; ++m) {
          const IntegralResult r = ortho_check(p, nu, n, m);
          CAPTURE(to_string(p));
          CAPTURE(nu);
          CAPTURE(n);
          CAPTURE(m);
          CHECK(r.abs_error <= std::max(1e-8, r.tail_bound));
        }
      }
    }
  }
}

TEST_CASE("Lommel discrete orthogonality") {
  const IntegralResult odd = lommel_ortho_check(0.5, 0, 1, 1000);
  CHECK(odd.numeric == 0.0);
  CHECK(odd.closed_form == 0.0);
  const IntegralResult diag = lommel_ortho_check(0.5, 0, 0, 1000);
  CHECK(std::fabs(diag.closed_form - 1.0 / 3.0) <= 1e-16);
  CHECK(diag.abs_error <= diag.tail_bound);
  const IntegralResult off = lommel_ortho_check(1.3, 0, 2, 1000);
  CHECK(off.closed_form == 0.0);
  CHECK(off.abs_error <= std::max(1e-12, off.tail_bound));
  // More zeros shrink the error.
  CHECK(lommel_ortho_check(0.5, 0, 0, 2000).abs_error < diag.abs_error);
  CHECK_THROWS_AS(lommel_ortho_check(0.5, 0, 0, 5), Error);
  CHECK_THROWS_AS(ortho_check(ParityPair::KK, -1.0, 0, 0), Error);
}
