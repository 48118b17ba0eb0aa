#include "tra/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "tra/error.hpp"
#include "tra/recursion.hpp"
#include "tra/scattering.hpp"
#include "tra/specfun.hpp"
#include "tra/validation.hpp"

namespace tra {

namespace {

constexpr double kPi = std::numbers::pi;

std::string label(const std::string& base, std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os << base;
  for (const auto& [k, v] : kv) os << ' ' << k << '=' << v;
  return os.str();
}

void add(SuiteReport& r, std::string name, double measured, double threshold) {
  r.checks.push_back({std::move(name), measured <= threshold, measured, threshold});
}

double rel(double got, double want) { return std::fabs(got - want) / std::max(1.0, std::fabs(want)); }

SuiteReport coulomb_suite() {
  SuiteReport r{"coulomb", {}};
  const auto grid = linear_grid(0.05, 10.0, 400);
  const Kratzer model{2.0, 1.0};
  const SolveResult tra = solve(model, 3.0, grid, 200);
  std::vector<double> exact(grid.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    exact[i] = coulomb_exact(2.0, 1, 3.0, grid[i]);
    worst = std::max(worst, std::fabs(exact[i] - tra.samples.psi[i]));
  }
  add(r, "kratzer Z=2 l=1 E=3 max|series - exact|", worst, 1e-4);
  const auto ode = ode_oracle(model, 3.0, grid);
  add(r, "kratzer Z=2 l=1 E=3 ode vs exact (shape)", compare_shapes(exact, ode.psi).rel_linf, 1e-6);

  const SolveResult free = solve(Kratzer{0.0, 0.0}, 2.0, grid, 20);
  add(r, "free particle |delta + pi/2|", std::fabs(free.solution.delta + kPi / 2.0), 1e-15);
  add(r, "free particle |C0 - sqrt(pi/2)|", std::fabs(free.solution.C0 - std::sqrt(kPi / 2.0)), 1e-15);
  add(r, "C0 closed form at xi=0", std::fabs(coulomb_C0(0.0, 0.0, 1.7) - std::sqrt(kPi / 2.0)), 1e-15);
  return r;
}

SuiteReport ortho_suite() {
  SuiteReport r{"ortho", {}};
  for (double nu : {0.5, 1.3, 2.7}) {
    for (ParityPair pair : {ParityPair::KK, ParityPair::JJ, ParityPair::KJ, ParityPair::KJUnit}) {
      for (int n = 0; n <= 4; ++n) {
        for (int m = 0; m <= 4; ++m) {
          const IntegralResult res = ortho_check(pair, nu, n, m);
          add(r, label(to_string(pair), {{"nu", nu}, {"n", n}, {"m", m}}), res.abs_error,
              std::max(1e-8, res.tail_bound));
        }
      }
    }
    for (double mu : {0.5, 1.0, 1.5}) {
      const double a = equal_index_form_a(nu, 1, mu);
      const double b = equal_index_form_b(nu, 1, mu);
      const double w = weber_schafheitlin_closed(nu, 1, 1, mu);
      add(r, label("equal-index forms agree", {{"nu", nu}, {"mu", mu}}),
          std::max(std::fabs(a - b), std::fabs(a - w)) / std::fabs(a), 1e-12);
    }
  }
  return r;
}

SuiteReport lommel_suite() {
  SuiteReport r{"lommel", {}};
  const std::pair<int, int> pairs[] = {{0, 0}, {1, 1}, {2, 2}, {0, 2}, {1, 3}, {0, 1}};
  for (double nu : {0.5, 1.3}) {
    for (const auto& [n, m] : pairs) {
      const IntegralResult res = lommel_ortho_check(nu, n, m, 1000);
      add(r, label("zero-sum orthogonality K=1000", {{"nu", nu}, {"n", n}, {"m", m}}), res.abs_error,
          std::max(1e-12, res.tail_bound));
    }
  }
  double worst = 0.0;
  for (double nu : {1.2, 2.5}) {
    for (double z : {2.0, 5.0, 9.0}) {
      for (int n = 0; n <= 8; ++n) {
        const double lhs = bessel_j(n + nu, z);
        const double rhs = lommel_h(n, nu, 1.0 / z) * bessel_j(nu, z) -
                           lommel_h(n - 1, nu + 1.0, 1.0 / z) * bessel_j(nu - 1.0, z);
        worst = std::max(worst, std::fabs(lhs - rhs));
      }
    }
  }
  add(r, "Lommel connection J_{n+nu} = h_n J_nu - h_{n-1} J_{nu-1}", worst, 1e-9);
  return r;
}

SuiteReport recursion_suite() {
  SuiteReport r{"recursion", {}};
  double seeds = 0.0, maps = 0.0, residual = 0.0;
  for (double nu : {0.6, 1.5, 3.2}) {
    for (double z : {0.1, 1.0, 5.0}) {
      const auto q = forward_solve(invcube_q(nu, z), 45).values();
      const auto w = forward_solve(invcube_w(nu, z), 45).values();
      const auto qt = forward_solve(dipquad_q(nu, z), 45).values();
      const auto kq = forward_solve(kratzer_q(nu, z), 45).values();
      const auto kv = forward_solve(kratzer_v(nu, z), 45).values();
      const double expected[] = {
          q[1], 0.0,
          nu * q[2], -(nu + 2.0),
          nu * q[3], -4.0 * (nu + 1.0) * (nu + 2.0) * (nu + 3.0) * z,
          w[0], 1.0,
          w[1], 4.0 * (nu + 1.0) * (nu + 2.0) * z,
          w[2], 12.0 * (nu + 1.0) * (nu + 2.0) * (nu + 3.0) * (2.0 * nu + 3.0) * z * z - 1.0,
          qt[0], 1.0,
          qt[1], 0.0,
          qt[2], -1.0,
          qt[3], -4.0 * (nu + 1.0) * (nu + 2.0) * z,
          kq[1], z * (nu + 1.0) / (2.0 * nu + 1.0),
          kv[0], 1.0 / (2.0 * nu + 1.0),
          kv[1], z * kv[0] / 2.0,
      };
      for (std::size_t i = 0; i < std::size(expected); i += 2)
        seeds = std::max(seeds, rel(expected[i], expected[i + 1]));
      for (int n = 0; n <= 40; ++n) {
        const auto i = static_cast<std::size_t>(n);
        maps = std::max(maps, std::fabs(nu * q[i + 2] + (n + nu + 2.0) * w[i]) /
                                  std::max(1.0, std::fabs((n + nu + 2.0) * w[i])));
        maps = std::max(maps, rel(qt[i], nu / (n + nu) * q[i]));
      }
      for (int n = 0; n < 30; ++n) {
        const auto i = static_cast<std::size_t>(n);
        maps = std::max(maps, rel(kq[i + 1], z * (n + 1.0 + nu) / (n + 1.0) * kv[i]));
      }
      for (const auto& fam : {kratzer_q(nu, z), kratzer_v(nu, z), invcube_q(nu, z), invcube_w(nu, z),
                              dipquad_q(nu, z), invquartic_q(nu, 0.5 * (nu * nu - 0.25), 3.0 * z)}) {
        const auto seq = forward_solve(fam, 60);
        for (int n = 1; n < 60; ++n) residual = std::max(residual, relative_residual(seq, n));
      }
    }
  }
  add(r, "seed identities (Q1=0, nu Q2=-(nu+2), W0, W1, W2, Q~0..3, V0, V1)", seeds, 1e-14);
  add(r, "map identities (W from Q, Q~ from Q, Q from V)", maps, 1e-12);
  add(r, "recurrence residual, all families", residual, 1e-12);
  const auto pos = positivity_check(2.5, 5.0, 1.0, 3.0, 2000);
  add(r, "positivity of Kratzer-type monic weights (nu=1.5)", pos.ok ? 0.0 : 1.0, 0.0);
  add(r, "monic weight n=1, a=2, b=4, alpha=1, beta=3", std::fabs(monic_b2_weight(1, 2, 4, 1, 3) - 16.0 / 3.0),
      1e-15);
  return r;
}

SuiteReport ode_suite() {
  SuiteReport r{"ode", {}};
  {
    const auto grid = linear_grid(0.1, 10.0, 200);
    const double E = 2.0, k = 2.0;
    const auto ode = ode_oracle(Kratzer{0.0, 0.0}, E, grid);
    std::vector<double> s(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) s[i] = std::sin(k * grid[i]);
    add(r, "free particle ode vs sin(kr)", compare_shapes(s, ode.psi).rel_linf, 1e-8);
  }
  {
    const auto grid = linear_grid(0.05, 10.0, 400);
    const auto ode = ode_oracle(Kratzer{2.0, 1.0}, 3.0, grid);
    const auto tra = solve(Kratzer{2.0, 1.0}, 3.0, grid, 200);
    add(r, "kratzer Z=2 l=1 E=3 series vs ode", compare_shapes(ode.psi, tra.samples.psi).rel_linf, 1e-6);
  }
  const auto grid = linear_grid(0.5, 5.0, 200);
  {
    DipoleQuadrupole dq;
    dq.d = 2.0;
    dq.q = 3.0;
    dq.eta = 0.5;
    dq.m = 1;
    const auto ode = ode_oracle(dq, 5.0, grid);
    const auto tra = solve(dq, 5.0, grid, 60);
    add(r, "dipquad d=2 q=3 eta=1/2 m=1 E=5 series vs ode", compare_shapes(ode.psi, tra.samples.psi).rel_linf,
        1e-3);
  }
  {
    const InverseCube ic{1.0, 1.5};
    const auto ode = ode_oracle(ic, 5.0, grid);
    const auto tra = solve(ic, 5.0, grid, 60);
    add(r, "invcube Lambda=1 zeta=1.5 E=5 series vs ode", compare_shapes(ode.psi, tra.samples.psi).rel_linf,
        1e-3);
  }
  {
    const InverseQuartic iq{1.0, 0.5, std::nullopt};
    const auto ode = ode_oracle(iq, 5.0, grid);
    const auto tra = solve(iq, 5.0, grid, 60);
    add(r, "invquartic Lambda=1 zeta=0.5 E=5 series vs ode", compare_shapes(ode.psi, tra.samples.psi).rel_linf,
        1e-3);
  }
  return r;
}

}  // namespace

bool SuiteReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<std::string> suite_names() { return {"coulomb", "ortho", "lommel", "recursion", "ode"}; }

SuiteReport run_suite(const std::string& name) {
  if (name == "coulomb") return coulomb_suite();
  if (name == "ortho") return ortho_suite();
  if (name == "lommel") return lommel_suite();
  if (name == "recursion") return recursion_suite();
  if (name == "ode") return ode_suite();
  fail(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace tra
