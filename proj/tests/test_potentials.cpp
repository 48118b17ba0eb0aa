#include <cmath>
#include <vector>

#include "doctest.h"
#include "tra/dipole.hpp"
#include "tra/error.hpp"
#include "tra/potentials.hpp"
#include "tra/scattering.hpp"
#include "tra/specfun.hpp"

using namespace tra;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

DipoleQuadrupole reference_dipquad() {
  DipoleQuadrupole m;
  m.d = 2.0;
  m.q = 3.0;
  m.eta = 0.5;
  m.m = 1;
  return m;
}

}  // namespace

TEST_CASE("potential values") {
  CHECK(effective_potential(Kratzer{0.0, 0.0}, 3.7) == 0.0);
  CHECK(effective_potential(Kratzer{2.0, 1.0}, 2.0) == 1.25);
  CHECK(effective_potential(InverseCube{1.0, 2.0}, 2.0) == doctest::Approx(0.25 + 0.25).epsilon(1e-15));
  CHECK(effective_potential(InverseQuartic{1.0, 16.0, std::nullopt}, 2.0) ==
        doctest::Approx(0.25 + 1.0).epsilon(1e-15));
  CHECK(effective_potential(Exponential1D{1.0, 1.0, Parity::Odd}, 0.0) == -0.5);
  const PotentialModel dq = resolve(reference_dipquad());
  const double chi = converged_chi(2.0, 1).chi;
  CHECK(std::fabs(effective_potential(dq, 1.0) - (0.5 * chi * (chi + 1.0) + 1.5)) < 1e-12);
  CHECK(code_of([] { (void)effective_potential(Kratzer{1.0, 0.0}, 0.0); }) == ErrorCode::Domain);
  CHECK(code_of([] { (void)effective_potential(Kratzer{1.0, 0.0}, -1.0); }) == ErrorCode::Domain);
}

TEST_CASE("model names and validation") {
  CHECK(model_name(Kratzer{}) == "kratzer");
  CHECK(is_scattering_model(Kratzer{}));
  CHECK_FALSE(is_scattering_model(Exponential1D{}));
  const double eps = 1e-9;
  CHECK(code_of([&] { validate(Kratzer{0.0, -0.125 - eps}); }) == ErrorCode::Domain);
  CHECK_NOTHROW(validate(Kratzer{0.0, -0.125 + eps}));
  CHECK(code_of([] { validate(InverseQuartic{1.0, 0.0, std::nullopt}); }) == ErrorCode::Domain);
  DipoleQuadrupole bad = reference_dipquad();
  bad.eta = 1.5;
  CHECK(code_of([&] { validate(bad); }) == ErrorCode::Domain);
  CHECK(code_of([] { validate(Exponential1D{-1.0, 1.0, Parity::Even}); }) == ErrorCode::Domain);
}

TEST_CASE("spectral map values") {
  const SpectralMap k = spectral_map(Kratzer{2.0, 1.0}, 3.0);
  CHECK(std::fabs(k.k - std::sqrt(6.0)) < 1e-15);
  CHECK(std::fabs(k.nu - 1.5) < 1e-15);
  CHECK(std::fabs(k.z - 8.0 / std::sqrt(6.0)) < 1e-15);
  CHECK(spectral_map(Kratzer{0.0, 0.7}, 1.0).z == 0.0);
  const SpectralMap d = spectral_map(resolve(reference_dipquad()), 5.0);
  CHECK(std::fabs(d.k - std::sqrt(10.0)) < 1e-15);
  CHECK(std::fabs(d.z - 1.0 / (1.5 * std::sqrt(10.0))) < 1e-15);
  CHECK(std::fabs(d.nu - (converged_chi(2.0, 1).chi + 0.5)) < 1e-14);
}

TEST_CASE("spectral map errors") {
  CHECK(code_of([] { (void)spectral_map(Kratzer{1.0, 1.0}, 0.0); }) == ErrorCode::Domain);
  CHECK(code_of([] { (void)spectral_map(Kratzer{1.0, 1.0}, -2.0); }) == ErrorCode::Domain);
  CHECK(code_of([] { (void)spectral_map(InverseCube{1.0, 0.0}, 2.0); }) == ErrorCode::Degenerate);
  DipoleQuadrupole flat = reference_dipquad();
  flat.q = 0.0;
  CHECK(code_of([&] { (void)spectral_map(resolve(flat), 2.0); }) == ErrorCode::Degenerate);
  CHECK(code_of([] { (void)spectral_map(Exponential1D{}, 2.0); }) == ErrorCode::Domain);
}

TEST_CASE("spectral map is invertible") {
  for (double xi : {-3.0, 0.5, 2.0}) {
    for (double lam : {0.0, 1.0, 6.0}) {
      for (double E : {0.3, 3.0}) {
        const SpectralMap s = spectral_map(Kratzer{xi, lam}, E);
        CHECK(std::fabs(s.z * s.k / 4.0 - xi) <= 1e-14 * std::max(1.0, std::fabs(xi)));
        CHECK(std::fabs(0.5 * (s.nu * s.nu - 0.25) - lam) <= 1e-14 * std::max(1.0, lam));
        CHECK(std::fabs(0.5 * s.k * s.k - E) <= 1e-14 * E);
        const SpectralMap c = spectral_map(InverseCube{lam, xi}, E);
        CHECK(std::fabs(1.0 / (c.k * c.z) - xi) <= 1e-14 * std::max(1.0, std::fabs(xi)));
      }
    }
  }
  const SpectralMap d = spectral_map(resolve(reference_dipquad()), 5.0);
  CHECK(std::fabs(1.0 / (d.k * d.z) - 1.5) < 1e-14);
}

TEST_CASE("d = 0 dipole model uses the orbital quantum number") {
  for (int m : {0, 2}) {
    for (int branch : {0, 1, 3}) {
      DipoleQuadrupole dq;
      dq.d = 0.0;
      dq.q = 1.0;
      dq.eta = 1.0;
      dq.m = m;
      dq.branch = branch;
      const auto r = std::get<DipoleQuadrupole>(resolve(dq));
      CHECK(r.chi == static_cast<double>(branch + m));
    }
  }
}

TEST_CASE("residual of exact solutions") {
  const double k = 1.7, E = 0.5 * k * k;
  for (double h : {1e-2, 5e-3}) {
    const auto r = linear_grid(0.5, 6.0, static_cast<int>(std::lround(5.5 / h)) + 1);
    std::vector<double> s(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) s[i] = std::sin(k * r[i]);
    CHECK(schrodinger_residual(r, s, E, Kratzer{0.0, 0.0}) <= 0.1 * std::pow(h, 4) * std::pow(k, 6));
  }
  const double nu = 1.5;
  const auto r = linear_grid(0.5, 8.0, 7501);
  std::vector<double> b(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) b[i] = std::sqrt(k * r[i]) * bessel_j(nu, k * r[i]);
  CHECK(schrodinger_residual(r, b, E, Kratzer{0.0, 0.5 * (nu * nu - 0.25)}) <= 1e-6);
}

TEST_CASE("residual of the exponential ground state") {
  const BoundState s = exponential_spectrum(1.0, 1.0, Parity::Odd, 0);
  const auto r = linear_grid(-4.0, 2.0, 6001);
  std::vector<double> psi(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) psi[i] = s(r[i]);
  CHECK(schrodinger_residual(r, psi, s.energy, Exponential1D{1.0, 1.0, Parity::Odd}) <= 1e-5);
}

TEST_CASE("residual guards") {
  const auto coarse = linear_grid(0.01, 1.0, 5);
  const std::vector<double> psi(5, 1.0);
  CHECK(code_of([&] { (void)schrodinger_residual(coarse, psi, 1.0, Kratzer{0.0, 1.0}); }) == ErrorCode::Resolution);
  CHECK(code_of([&] { (void)schrodinger_residual(coarse, std::vector<double>(4, 1.0), 1.0, Kratzer{}); }) ==
        ErrorCode::InvalidArgument);
}
