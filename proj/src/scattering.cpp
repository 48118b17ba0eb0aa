#include "tra/scattering.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tra/error.hpp"

namespace tra {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDecayRatio = 1e-14;
constexpr int kDecayRun = 5;

void check_grid(const std::vector<double>& r, bool radial) {
  if (r.empty()) fail(ErrorCode::InvalidArgument, "r grid must not be empty");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i])) fail(ErrorCode::Domain, "r grid must be finite");
    if (radial && !(r[i] > 0.0)) fail(ErrorCode::Domain, "r grid must be > 0 for radial models");
    if (i > 0 && !(r[i] > r[i - 1])) fail(ErrorCode::InvalidArgument, "r grid must ascend strictly");
  }
}

// sin and cos of (sigma + g) pi/2 with the integer part of g reduced exactly.
struct QuarterTurn {
  double s0 = 0.0, c0 = 1.0;
  long long base = 0;

  explicit QuarterTurn(double g) {
    const double whole = std::floor(g);
    const double frac = g - whole;
    base = static_cast<long long>(std::fmod(whole, 4.0));
    if (base < 0) base += 4;
    if (frac != 0.0) {
      s0 = std::sin(frac * kPi / 2.0);
      c0 = std::cos(frac * kPi / 2.0);
    }
  }

  void at(long long sigma, double& s, double& c) const {
    long long q = (sigma + base) % 4;
    if (q < 0) q += 4;
    switch (q) {
      case 0: s = s0; c = c0; break;
      case 1: s = c0; c = -s0; break;
      case 2: s = -s0; c = -c0; break;
      default: s = -c0; c = s0; break;
    }
  }
};

double log_abs_bessel(double order, double x, double value) {
  if (value != 0.0) return std::log(std::fabs(value));
  // Underflow: leading term of the ascending series.
  return order * std::log(0.5 * x) - std::lgamma(order + 1.0);
}

struct SeriesPlan {
  RecursionFamily family;
  BasisIndex index;
  bool growing = false;
  bool weighted = false;  // multiply by (1 + n/nu)
};

SeriesPlan plan_for(const PotentialModel& model, const SpectralMap& map) {
  SeriesPlan plan;
  if (const auto* m = std::get_if<Kratzer>(&model)) {
    (void)m;
    plan.family = kratzer_q(map.nu, map.z);
  } else if (std::holds_alternative<InverseCube>(model)) {
    plan.family = invcube_q(map.nu, map.z);
    plan.growing = true;
  } else if (const auto* q = std::get_if<InverseQuartic>(&model)) {
    plan.family = invquartic_q(map.nu, q->Lambda, map.z);
    plan.index = {2, 1};
    plan.growing = true;
  } else if (std::holds_alternative<DipoleQuadrupole>(model)) {
    plan.family = dipquad_q(map.nu, map.z);
    plan.growing = true;
    plan.weighted = true;
  } else {
    fail(ErrorCode::Domain, "solve: the exponential model has bound states only");
  }
  return plan;
}

// Bessel values J_{sigma(n)+nu}(x) for n = 0..count-1.
std::vector<double> basis_values(double nu, double x, BasisIndex index, int count) {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  if (count <= 0) return out;
  const int top = index.stride * (count - 1);
  const BesselBatch batch = bessel_batch(nu + index.offset, x, top);
  for (int n = 0; n < count; ++n)
    out[static_cast<std::size_t>(n)] = batch[static_cast<std::size_t>(index.stride * n)];
  return out;
}

}  // namespace

PhaseShift phase_shift(const std::vector<double>& weights, double nu, BasisIndex index) {
  if (!(nu > 0.0)) fail(ErrorCode::Domain, "phase_shift: nu must be > 0");
  const QuarterTurn turn(nu + 0.5);
  PhaseShift out;
  for (std::size_t n = 0; n < weights.size(); ++n) {
    double s = 0.0, c = 0.0;
    turn.at(static_cast<long long>(index.stride) * static_cast<long long>(n) + index.offset, s, c);
    out.S += s * weights[n];
    out.C += c * weights[n];
  }
  const double norm2 = out.S * out.S + out.C * out.C;
  if (norm2 == 0.0 || !std::isfinite(norm2))
    fail(ErrorCode::UndefinedPhase, "phase_shift: S and C vanish (or overflow); phase undefined");
  out.delta = std::atan2(-out.S, out.C);
  if (out.delta <= -kPi) out.delta = kPi;
  out.C0 = std::sqrt((kPi / 2.0) / norm2);
  return out;
}

SolveResult solve(const PotentialModel& model_in, double E, const std::vector<double>& r_grid,
                  int n_max) {
  const PotentialModel model = resolve(model_in);
  if (!is_scattering_model(model))
    fail(ErrorCode::Domain, "solve: the exponential model has bound states only");
  if (n_max < 1) fail(ErrorCode::InvalidArgument, "solve: n_max must be >= 1");
  const SpectralMap map = spectral_map(model, E);
  check_grid(r_grid, true);

  const SeriesPlan plan = plan_for(model, map);
  SolveResult result;
  ScatteringSolution& sol = result.solution;
  sol.model = model;
  sol.E = E;
  sol.map = map;
  sol.index = plan.index;
  sol.growing = plan.growing;
  sol.coefficients = forward_solve(plan.family, n_max);

  const int count = n_max + 1;
  sol.weights.resize(static_cast<std::size_t>(count));
  std::vector<double> log_w(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const double factor = plan.weighted ? 1.0 + n / map.nu : 1.0;
    sol.weights[i] = factor * sol.coefficients.value(i);
    log_w[i] = sol.coefficients.log_abs(i) + std::log(factor);
  }

  // Term magnitudes at the largest radius, where the Bessel factors decay last.
  const double x_max = map.k * r_grid.back();
  const std::vector<double> j_max = basis_values(map.nu, x_max, plan.index, count);
  std::vector<double> log_t(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const double order = plan.index.stride * n + plan.index.offset + map.nu;
    log_t[i] = log_w[i] + log_abs_bessel(order, x_max, j_max[i]);
  }

  if (!plan.growing) {
    double running = -std::numeric_limits<double>::infinity();
    int found = -1;
    for (int n = 0; n + kDecayRun <= count && found < 0; ++n) {
      for (int j = 0; j < kDecayRun; ++j) running = std::max(running, log_t[static_cast<std::size_t>(n + j)]);
      if (n == 0) continue;
      bool small = true;
      for (int j = 0; j < kDecayRun && small; ++j)
        small = log_t[static_cast<std::size_t>(n + j)] < running + std::log(kDecayRatio);
      if (small) found = n;
    }
    if (found > 0) {
      sol.n_used = found;
      sol.tail_estimate = std::exp(log_t[static_cast<std::size_t>(found)]);
    } else {
      sol.n_used = count;
      sol.tail_estimate = std::exp(log_t.back());
      sol.truncation_warning = true;
    }
  } else {
    int best = -1;
    for (int n = 1; n < count; ++n) {
      const auto i = static_cast<std::size_t>(n);
      if (sol.coefficients.mantissa[i] == 0.0) continue;
      if (best < 0 || log_t[i] < log_t[static_cast<std::size_t>(best)]) best = n;
    }
    if (best < 0) {
      sol.n_used = count;
      sol.tail_estimate = 0.0;
    } else if (best == count - 1) {
      sol.n_used = count;
      sol.tail_estimate = std::exp(log_t.back());
      sol.truncation_warning = true;
    } else {
      sol.n_used = best;
      sol.tail_estimate = std::exp(log_t[static_cast<std::size_t>(best)]);
      sol.plateau = true;
      sol.plateau_index = best;
    }
  }

  const std::vector<double> used(sol.weights.begin(), sol.weights.begin() + sol.n_used);
  if (std::holds_alternative<Kratzer>(model)) {
    const auto& kz = std::get<Kratzer>(model);
    try {
      const PhaseShift ps = phase_shift(used, map.nu, plan.index);
      sol.S = ps.S;
      sol.C = ps.C;
      sol.delta = ps.delta;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UndefinedPhase) throw;
      sol.delta = std::numeric_limits<double>::quiet_NaN();
    }
    sol.C0 = coulomb_C0(kz.xi, kz.Lambda, map.k);
    sol.c0_source = C0Source::CoulombGamma;
    sol.long_range = kz.xi != 0.0;
  } else {
    const PhaseShift ps = phase_shift(used, map.nu, plan.index);
    sol.S = ps.S;
    sol.C = ps.C;
    sol.delta = ps.delta;
    sol.C0 = ps.C0;
    sol.c0_source = C0Source::PhaseSums;
  }

  result.samples.r = r_grid;
  result.samples.psi.resize(r_grid.size());
  for (std::size_t p = 0; p < r_grid.size(); ++p) {
    const double x = map.k * r_grid[p];
    const std::vector<double> j = basis_values(map.nu, x, plan.index, sol.n_used);
    double sum = 0.0;
    for (int n = 0; n < sol.n_used; ++n)
      sum += sol.weights[static_cast<std::size_t>(n)] * j[static_cast<std::size_t>(n)];
    result.samples.psi[p] = sol.C0 * std::sqrt(x) * sum;
  }
  return result;
}

double coulomb_exact(double Z, int ell, double E, double r) {
  if (!(E > 0.0)) fail(ErrorCode::Domain, "coulomb_exact: E must be > 0");
  if (!(r > 0.0)) fail(ErrorCode::Domain, "coulomb_exact: r must be > 0");
  if (ell < 0) fail(ErrorCode::Domain, "coulomb_exact: ell must be >= 0");
  const double k = std::sqrt(2.0 * E);
  const double sigma = Z / k;
  const double rho = k * r;
  const double log_c = ell * std::numbers::ln2 - kPi * sigma / 2.0 +
                       log_gamma_abs(ell + 1.0, sigma) - std::lgamma(2.0 * ell + 2.0);
  const double log_pref = log_c + (ell + 1.0) * std::log(rho);
  const std::complex<double> m =
      hyp1f1({ell + 1.0, sigma}, {2.0 * ell + 2.0, 0.0}, {0.0, -2.0 * rho});
  const std::complex<double> psi = std::exp(log_pref) * std::polar(1.0, rho) * m;
  const double scale = std::max(std::fabs(psi.real()), std::min(1.0, std::exp(log_pref)));
  if (std::fabs(psi.imag()) > 1e-9 * scale) {
    std::ostringstream os;
    os << "coulomb_exact: imaginary residue " << psi.imag() << " at r=" << r;
    throw AccuracyError(os.str(), psi.real());
  }
  return psi.real();
}

double coulomb_C0(double xi, double Lambda, double k) {
  if (!(Lambda > -0.125)) fail(ErrorCode::Domain, "coulomb_C0: Lambda must be > -1/8");
  if (!(k > 0.0)) fail(ErrorCode::Domain, "coulomb_C0: k must be > 0");
  const double nu = std::sqrt(2.0 * Lambda + 0.25);
  const double log_c0 = 0.5 * std::log(kPi / 2.0) - std::lgamma(0.5 + nu) -
                        kPi * xi / (2.0 * k) + log_gamma_abs(0.5 + nu, xi / k);
  return std::exp(log_c0);
}

double kratzer_asymptote(double xi, double k, double delta, double r) {
  if (!(k > 0.0) || !(r > 0.0)) fail(ErrorCode::Domain, "kratzer_asymptote: need k, r > 0");
  return std::cos(k * r - (xi / k) * std::log(2.0 * k * r) + delta);
}

double BoundState::operator()(double r) const {
  return std::sqrt(2.0 * order) * bessel_j(order, std::exp(lambda * r));
}

BoundState exponential_spectrum(double lambda, double nu, Parity parity, int n) {
  validate(Exponential1D{lambda, nu, parity});
  if (n < 0) fail(ErrorCode::InvalidArgument, "exponential_spectrum: n must be >= 0");
  BoundState s;
  s.lambda = lambda;
  s.order = 2.0 * n + nu + (parity == Parity::Odd ? 1.0 : 0.0);
  s.energy = -0.5 * lambda * lambda * s.order * s.order;
  return s;
}

namespace {

struct State {
  double psi = 0.0;
  double dpsi = 0.0;
};

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {0, 0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr std::array<double, 7> kB = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192,
                                      -2187.0 / 6784, 11.0 / 84, 0};
constexpr std::array<double, 7> kBStar = {5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640,
                                          -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

enum class StartKind { PowerLaw, Wkb };

struct StartPlan {
  StartKind kind = StartKind::PowerLaw;
  double xi = 0.0;        // power law: Coulomb strength
  double s = 0.0;         // power law: leading exponent
  double zeta = 0.0;      // WKB: singular strength
  int power = 3;          // WKB: 3 or 4
};

StartPlan start_plan(const PotentialModel& model) {
  StartPlan plan;
  auto power_law = [&](double xi, double Lambda) {
    plan.kind = StartKind::PowerLaw;
    plan.xi = xi;
    plan.s = std::sqrt(2.0 * Lambda + 0.25) + 0.5;
  };
  auto singular = [&](double zeta, int power, double Lambda) {
    if (zeta < 0.0)
      fail(ErrorCode::NoRegularSolution,
           "ode_oracle: attractive singular tail has no regular solution at r = 0");
    if (zeta == 0.0) {
      power_law(0.0, Lambda);
      return;
    }
    plan.kind = StartKind::Wkb;
    plan.zeta = zeta;
    plan.power = power;
  };
  if (const auto* m = std::get_if<Kratzer>(&model)) {
    power_law(m->xi, m->Lambda);
  } else if (const auto* c = std::get_if<InverseCube>(&model)) {
    singular(c->zeta, 3, c->Lambda);
  } else if (const auto* q = std::get_if<InverseQuartic>(&model)) {
    singular(q->zeta, 4, q->Lambda);
  } else if (const auto* d = std::get_if<DipoleQuadrupole>(&model)) {
    singular(d->p(), 3, 0.5 * d->chi * (d->chi + 1.0));
  } else {
    fail(ErrorCode::Domain, "ode_oracle: scattering models only");
  }
  return plan;
}

State frobenius_start(double xi, double s, double E, double r0) {
  // psi / r0^s = sum a_j r0^j with a_j = 2(xi a_{j-1} - E a_{j-2}) / (j (j + 2s - 1)).
  double a_prev2 = 0.0, a_prev = 1.0;
  double psi = 1.0;
  double dpsi = s / r0;
  double power = 1.0;
  for (int j = 1; j < 200; ++j) {
    const double a = 2.0 * (xi * a_prev - E * a_prev2) / (j * (j + 2.0 * s - 1.0));
    power *= r0;
    const double term = a * power;
    psi += term;
    dpsi += a * (j + s) * power / r0;
    a_prev2 = a_prev;
    a_prev = a;
    if (std::fabs(term) < 1e-18 * std::fabs(psi) && j > 2) break;
  }
  return {psi, dpsi};
}

}  // namespace

WavefunctionSamples ode_oracle(const PotentialModel& model_in, double E,
                               const std::vector<double>& r_grid, const OdeOptions& options) {
  const PotentialModel model = resolve(model_in);
  if (!is_scattering_model(model)) fail(ErrorCode::Domain, "ode_oracle: scattering models only");
  if (!(E > 0.0)) fail(ErrorCode::Domain, "ode_oracle: E must be > 0");
  check_grid(r_grid, true);
  const StartPlan plan = start_plan(model);

  auto potential = [&](double r) { return effective_potential(model, r); };
  double r = 0.0;
  State y;
  if (plan.kind == StartKind::PowerLaw) {
    r = std::min(options.r0, 0.5 * r_grid.front());
    y = frobenius_start(plan.xi, plan.s, E, r);
  } else {
    const double root = std::sqrt(2.0 * plan.zeta);
    const double r_wkb = plan.power == 3 ? std::pow(2.0 * root / options.wkb_exponent, 2.0)
                                         : root / options.wkb_exponent;
    r = std::min(r_wkb, 0.5 * r_grid.front());
    const double q = 2.0 * (potential(r) - E);
    const double h = 1e-6 * r;
    const double dq = 2.0 * (potential(r + h) - potential(r - h)) / (2.0 * h);
    y = {1.0, std::sqrt(q) - dq / (4.0 * q)};
  }

  auto rhs = [&](double x, const State& s) {
    return State{s.dpsi, 2.0 * (potential(x) - E) * s.psi};
  };

  WavefunctionSamples out;
  out.r = r_grid;
  out.psi.assign(r_grid.size(), 0.0);
  double h = 1e-3 * r;
  double scale_psi = std::fabs(y.psi), scale_dpsi = std::fabs(y.dpsi);
  const double rtol = options.rtol;
  for (std::size_t g = 0; g < r_grid.size(); ++g) {
    const double target = r_grid[g];
    int guard = 0;
    while (r < target) {
      if (++guard > 10000000) throw AccuracyError("ode_oracle: step limit reached", y.psi);
      const bool clipped = r + h >= target;
      const double step = clipped ? target - r : h;
      std::array<State, 7> k;
      k[0] = rhs(r, y);
      for (int s = 1; s < 7; ++s) {
        State tmp = y;
        for (int j = 0; j < s; ++j) {
          tmp.psi += step * kA[s][j] * k[static_cast<std::size_t>(j)].psi;
          tmp.dpsi += step * kA[s][j] * k[static_cast<std::size_t>(j)].dpsi;
        }
        k[static_cast<std::size_t>(s)] = rhs(r + kC[static_cast<std::size_t>(s)] * step, tmp);
      }
      State next = y, err{0.0, 0.0};
      for (int s = 0; s < 7; ++s) {
        const auto i = static_cast<std::size_t>(s);
        next.psi += step * kB[i] * k[i].psi;
        next.dpsi += step * kB[i] * k[i].dpsi;
        err.psi += step * (kB[i] - kBStar[i]) * k[i].psi;
        err.dpsi += step * (kB[i] - kBStar[i]) * k[i].dpsi;
      }
      const double tol_psi =
          rtol * std::max({std::fabs(y.psi), std::fabs(next.psi), 1e-3 * scale_psi});
      const double tol_dpsi =
          rtol * std::max({std::fabs(y.dpsi), std::fabs(next.dpsi), 1e-3 * scale_dpsi});
      const double e = std::max(std::fabs(err.psi) / tol_psi, std::fabs(err.dpsi) / tol_dpsi);
      const double factor = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
      if (e <= 1.0) {
        r = clipped ? target : r + step;
        y = next;
        scale_psi = std::max(scale_psi, std::fabs(y.psi));
        scale_dpsi = std::max(scale_dpsi, std::fabs(y.dpsi));
        if (!clipped) h = step * factor;
        if (scale_psi > 1e100) {
          y.psi *= 1e-100;
          y.dpsi *= 1e-100;
          scale_psi *= 1e-100;
          scale_dpsi *= 1e-100;
          for (std::size_t p = 0; p < g; ++p) out.psi[p] *= 1e-100;
        }
      } else {
        h = step * factor;
        if (h < 1e-15 * std::max(1.0, r))
          throw AccuracyError("ode_oracle: step size underflow", y.psi);
      }
    }
    out.psi[g] = y.psi;
  }
  return out;
}

ShapeComparison compare_shapes(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty())
    fail(ErrorCode::InvalidArgument, "compare_shapes: sizes must match and be non-zero");
  double ab = 0.0, bb = 0.0, amax = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    bb += b[i] * b[i];
    amax = std::max(amax, std::fabs(a[i]));
  }
  ShapeComparison out;
  out.amplitude = bb > 0.0 ? ab / bb : 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::fabs(a[i] - out.amplitude * b[i]));
  out.rel_linf = amax > 0.0 ? worst / amax : worst;
  return out;
}

std::vector<double> linear_grid(double start, double stop, int count) {
  if (count < 2 || !(start < stop) || !std::isfinite(start) || !std::isfinite(stop))
    fail(ErrorCode::InvalidArgument, "grid needs count >= 2 and start < stop");
  std::vector<double> g(static_cast<std::size_t>(count));
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = start + i * step;
  g.back() = stop;
  return g;
}

std::vector<double> log_grid(double start, double stop, int count) {
  if (!(start > 0.0)) fail(ErrorCode::InvalidArgument, "log grid needs start > 0");
  std::vector<double> g = linear_grid(std::log(start), std::log(stop), count);
  for (auto& v : g) v = std::exp(v);
  g.front() = start;
  g.back() = stop;
  return g;
}

}  // namespace tra
