#include "tra/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tra/dipole.hpp"
#include "tra/error.hpp"

namespace tra {

namespace {

constexpr double kLambdaFloor = -0.125;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, std::string(field) + " must be finite");
}

void require_lambda(double Lambda, const char* model) {
  require_finite(Lambda, "Lambda");
  if (!(Lambda > kLambdaFloor)) {
    std::ostringstream os;
    os << model << ": Lambda must be > -1/8 (got " << Lambda << ")";
    fail(ErrorCode::Domain, os.str());
  }
}

double basis_order(double Lambda) { return std::sqrt(2.0 * Lambda + 0.25); }

double dipole_chi(const DipoleQuadrupole& m) {
  if (std::isfinite(m.chi)) return m.chi;
  return converged_chi(m.d, m.m, m.branch, m.size).chi;
}

}  // namespace

std::string model_name(const PotentialModel& model) {
  return std::visit(Overloaded{
                        [](const Kratzer&) { return std::string("kratzer"); },
                        [](const InverseCube&) { return std::string("invcube"); },
                        [](const InverseQuartic&) { return std::string("invquartic"); },
                        [](const Exponential1D&) { return std::string("exponential"); },
                        [](const DipoleQuadrupole&) { return std::string("dipquad"); },
                    },
                    model);
}

void validate(const PotentialModel& model) {
  std::visit(Overloaded{
                 [](const Kratzer& m) {
                   require_finite(m.xi, "xi");
                   require_lambda(m.Lambda, "kratzer");
                 },
                 [](const InverseCube& m) {
                   require_finite(m.zeta, "zeta");
                   require_lambda(m.Lambda, "invcube");
                 },
                 [](const InverseQuartic& m) {
                   require_finite(m.zeta, "zeta");
                   require_lambda(m.Lambda, "invquartic");
                   if (!(m.zeta > 0.0)) fail(ErrorCode::Domain, "invquartic: zeta must be > 0");
                   if (m.nu && !(*m.nu > 0.0 && std::isfinite(*m.nu)))
                     fail(ErrorCode::Domain, "invquartic: nu must be > 0");
                 },
                 [](const Exponential1D& m) {
                   require_finite(m.lambda, "lambda");
                   require_finite(m.nu, "nu");
                   if (!(m.lambda > 0.0)) fail(ErrorCode::Domain, "exponential: lambda must be > 0");
                   if (!(m.nu > 0.0)) fail(ErrorCode::Domain, "exponential: nu must be > 0");
                 },
                 [](const DipoleQuadrupole& m) {
                   require_finite(m.d, "d");
                   require_finite(m.q, "q");
                   require_finite(m.eta, "eta");
                   if (!(m.d >= 0.0)) fail(ErrorCode::Domain, "dipquad: d must be >= 0");
                   if (m.eta < -0.5 || m.eta > 1.0)
                     fail(ErrorCode::Domain, "dipquad: eta must lie in [-1/2, 1]");
                   if (m.m < 0) fail(ErrorCode::Domain, "dipquad: m must be >= 0");
                   if (m.branch < 0) fail(ErrorCode::InvalidArgument, "dipquad: branch must be >= 0");
                   if (m.size < 2) fail(ErrorCode::InvalidArgument, "dipquad: size must be >= 2");
                 },
             },
             model);
}

PotentialModel resolve(const PotentialModel& model) {
  validate(model);
  PotentialModel out = model;
  if (auto* dq = std::get_if<DipoleQuadrupole>(&out)) dq->chi = dipole_chi(*dq);
  return out;
}

bool is_scattering_model(const PotentialModel& model) {
  return !std::holds_alternative<Exponential1D>(model);
}

double effective_potential(const PotentialModel& model, double r) {
  if (!std::isfinite(r)) fail(ErrorCode::Domain, "effective_potential: r must be finite");
  if (is_scattering_model(model) && !(r > 0.0))
    fail(ErrorCode::Domain, "effective_potential: r must be > 0 for radial models");
  return std::visit(Overloaded{
                        [r](const Kratzer& m) { return m.xi / r + m.Lambda / (r * r); },
                        [r](const InverseCube& m) {
                          return m.Lambda / (r * r) + m.zeta / (r * r * r);
                        },
                        [r](const InverseQuartic& m) {
                          const double r2 = r * r;
                          return m.Lambda / r2 + m.zeta / (r2 * r2);
                        },
                        [r](const Exponential1D& m) {
                          return -0.5 * m.lambda * m.lambda * std::exp(2.0 * m.lambda * r);
                        },
                        [r](const DipoleQuadrupole& m) {
                          const double chi = dipole_chi(m);
                          return chi * (chi + 1.0) / (2.0 * r * r) + m.p() / (r * r * r);
                        },
                    },
                    model);
}

SpectralMap spectral_map(const PotentialModel& model, double E) {
  validate(model);
  if (!(E > 0.0) || !std::isfinite(E))
    fail(ErrorCode::Domain, "spectral_map: scattering needs E > 0");
  SpectralMap map;
  map.k = std::sqrt(2.0 * E);
  std::visit(Overloaded{
                 [&](const Kratzer& m) {
                   map.nu = basis_order(m.Lambda);
                   map.z = 4.0 * m.xi / map.k;
                 },
                 [&](const InverseCube& m) {
                   if (m.zeta == 0.0)
                     fail(ErrorCode::Degenerate,
                          "invcube: zeta = 0 has no inverse-cube term; use kratzer with xi = 0");
                   map.nu = basis_order(m.Lambda);
                   map.z = 1.0 / (map.k * m.zeta);
                 },
                 [&](const InverseQuartic& m) {
                   map.nu = m.nu ? *m.nu : basis_order(m.Lambda);
                   map.z = m.zeta * map.k * map.k;
                 },
                 [&](const Exponential1D&) {
                   fail(ErrorCode::Domain,
                        "exponential: the model has bound states only; use exponential_spectrum");
                 },
                 [&](const DipoleQuadrupole& m) {
                   if (m.p() == 0.0)
                     fail(ErrorCode::Degenerate,
                          "dipquad: p = eta q = 0 has no quadrupole term; use kratzer with xi = 0");
                   map.nu = dipole_chi(m) + 0.5;
                   map.z = 1.0 / (map.k * m.p());
                 },
             },
             model);
  return map;
}

double schrodinger_residual(const std::vector<double>& r, const std::vector<double>& psi,
                            double E, const PotentialModel& model) {
  const std::size_t n = r.size();
  if (n < 5) fail(ErrorCode::InvalidArgument, "schrodinger_residual: need at least 5 points");
  if (psi.size() != n) fail(ErrorCode::InvalidArgument, "schrodinger_residual: size mismatch");
  const double h = (r.back() - r.front()) / static_cast<double>(n - 1);
  if (!(h > 0.0)) fail(ErrorCode::InvalidArgument, "schrodinger_residual: grid must ascend");
  for (std::size_t i = 1; i < n; ++i)
    if (std::fabs(r[i] - r[i - 1] - h) > 1e-6 * h)
      fail(ErrorCode::InvalidArgument, "schrodinger_residual: grid must be uniform");

  std::vector<double> v(n);
  double v_max = 0.0, psi_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = effective_potential(model, r[i]);
    v_max = std::max(v_max, std::fabs(v[i]));
    psi_max = std::max(psi_max, std::fabs(psi[i]));
  }
  if (h * h * v_max > 1.0) {
    std::ostringstream os;
    os << "schrodinger_residual: grid too coarse, h^2 max|V| = " << h * h * v_max;
    fail(ErrorCode::Resolution, os.str());
  }
  if (psi_max == 0.0) return 0.0;

  const double scale = (E != 0.0 ? std::fabs(E) : 1.0) * psi_max;
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double d2 = (-psi[i + 2] + 16.0 * psi[i + 1] - 30.0 * psi[i] + 16.0 * psi[i - 1] -
                       psi[i - 2]) /
                      (12.0 * h * h);
    worst = std::max(worst, std::fabs(-0.5 * d2 + (v[i] - E) * psi[i]));
  }
  return worst / scale;
}

}  // namespace tra
