#include "tra/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "tra/error.hpp"
#include "tra/specfun.hpp"

namespace tra {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGaussPoints = 16;

struct GaussRule {
  std::array<double, kGaussPoints> node{};
  std::array<double, kGaussPoints> weight{};
};

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_16.
const GaussRule& gauss16() {
  static const GaussRule rule = [] {
    GaussRule g;
    const int n = kGaussPoints;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-16) break;
      }
      g.node[static_cast<std::size_t>(i)] = x;
      g.weight[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return g;
  }();
  return rule;
}

template <class F>
double panel(F&& f, double lo, double hi) {
  const GaussRule& g = gauss16();
  const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (int i = 0; i < kGaussPoints; ++i)
    sum += g.weight[static_cast<std::size_t>(i)] * f(mid + half * g.node[static_cast<std::size_t>(i)]);
  return sum * half;
}

// Solves the dense system in place (partial pivoting).
std::vector<long double> solve_dense(std::vector<std::vector<long double>> a,
                                     std::vector<long double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const long double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<long double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    long double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

// Limit of F(X) = I + sum_j c_j X^{-e_j} from samples at X_k.
long double extrapolate(const std::vector<double>& xs, const std::vector<double>& fs,
                        const std::vector<double>& exponents) {
  const std::size_t n = exponents.size() + 1;
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n));
  std::vector<long double> b(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long double ratio = static_cast<long double>(xs[k]) / xs[0];
    a[k][0] = 1.0L;
    for (std::size_t j = 0; j < exponents.size(); ++j)
      a[k][j + 1] = std::pow(ratio, -static_cast<long double>(exponents[j]));
    b[k] = fs[k];
  }
  return solve_dense(a, b)[0];
}

int parity_sign(int k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace

double weber_schafheitlin_closed(double nu, int n, int m, double mu) {
  if (!(mu > 0.0) || !(n + m + 2.0 * nu + 1.0 > mu) || n < 0 || m < 0)
    fail(ErrorCode::Domain, "weber_schafheitlin: need n+m+2nu+1 > mu > 0");
  const double s = 0.5 * (n + m);
  const double d = 0.5 * (n - m);
  const double log_part = -mu * std::numbers::ln2 + std::lgamma(mu) +
                          std::lgamma(0.5 * (1.0 - mu) + nu + s) -
                          std::lgamma(0.5 * (1.0 + mu) + nu + s);
  return std::exp(log_part) * reciprocal_gamma(0.5 * (1.0 + mu) + d) *
         reciprocal_gamma(0.5 * (1.0 + mu) - d);
}

IntegralResult bessel_product_integral(double a, double b, double mu,
                                       const QuadratureOptions& options) {
  if (!(mu >= 0.0) || !(a + b + 1.0 > mu))
    fail(ErrorCode::Domain, "bessel_product_integral: need a+b+1 > mu >= 0");
  if (options.segments_per_pi < 1 || options.extrapolation_terms < 2 || !(options.epsilon > 0.0))
    fail(ErrorCode::InvalidArgument, "bessel_product_integral: bad quadrature options");

  auto f = [&](double x) { return std::pow(x, -mu) * bessel_j(a, x) * bessel_j(b, x); };
  IntegralResult out;

  // Analytic piece below epsilon from the leading power of J_a J_b.
  const double p = a + b - mu + 1.0;
  const double eps = options.epsilon;
  long double total = std::exp(p * std::log(eps) - (a + b) * std::numbers::ln2 -
                               std::lgamma(a + 1.0) - std::lgamma(b + 1.0)) /
                      p;

  // Graded panels [eps, 1], ratio 2.
  double hi = 1.0;
  while (hi > eps) {
    const double lo = std::max(0.5 * hi, eps);
    total += panel(f, lo, hi);
    ++out.segments_used;
    hi = lo;
  }
  total += panel(f, 1.0, kPi);
  ++out.segments_used;

  // Extrapolation radii: multiples of pi beyond the Hankel regime of the orders.
  const double order = std::max(a, b);
  const int k0 = static_cast<int>(std::ceil(std::max(150.0, order * order) / kPi));
  const int terms = options.extrapolation_terms;
  std::vector<double> xs, fs;
  const double width = kPi / options.segments_per_pi;
  int current = 1;  // integrated up to current * pi
  for (int k = 0; k <= terms; ++k) {
    const int target = k0 + k * k0 / 2;
    while (current < target) {
      const double base = current * kPi;
      for (int s = 0; s < options.segments_per_pi; ++s) {
        total += panel(f, base + s * width, base + (s + 1) * width);
        ++out.segments_used;
      }
      ++current;
    }
    xs.push_back(current * kPi);
    fs.push_back(static_cast<double>(total));
  }

  std::vector<double> exponents;
  for (int j = 0; static_cast<int>(exponents.size()) < terms; ++j)
    if (mu + j > 0.0) exponents.push_back(mu + j);
  const long double full = extrapolate(xs, fs, exponents);
  std::vector<double> xs_lo(xs.begin(), xs.end() - 1), fs_lo(fs.begin(), fs.end() - 1);
  std::vector<double> exp_lo(exponents.begin(), exponents.end() - 1);
  const long double reduced = extrapolate(xs_lo, fs_lo, exp_lo);
  out.numeric = static_cast<double>(full);
  out.tail_bound = static_cast<double>(std::fabs(full - reduced));
  return out;
}

IntegralResult weber_schafheitlin(double nu, int n, int m, double mu,
                                  const QuadratureOptions& options) {
  const double closed = weber_schafheitlin_closed(nu, n, m, mu);
  IntegralResult r = bessel_product_integral(n + nu, m + nu, mu, options);
  r.closed_form = closed;
  r.abs_error = std::fabs(r.numeric - closed);
  return r;
}

double equal_index_form_a(double nu, int n, double mu) {
  if (!(mu > 0.0) || !(2.0 * n + 2.0 * nu + 1.0 > mu))
    fail(ErrorCode::Domain, "equal_index_form: need 2n+2nu+1 > mu > 0");
  return std::exp(std::lgamma(mu) - mu * std::numbers::ln2 - 2.0 * std::lgamma(0.5 * (1.0 + mu)) +
                  std::lgamma(0.5 * (1.0 - mu) + nu + n) - std::lgamma(0.5 * (1.0 + mu) + nu + n));
}

double equal_index_form_b(double nu, int n, double mu) {
  if (!(mu > 0.0) || !(2.0 * n + 2.0 * nu + 1.0 > mu))
    fail(ErrorCode::Domain, "equal_index_form: need 2n+2nu+1 > mu > 0");
  return std::exp(mu * std::numbers::ln2 + 2.0 * std::lgamma(0.5 * mu) - std::log(4.0 * kPi) -
                  std::lgamma(mu) + std::lgamma(0.5 * (1.0 - mu) + nu + n) -
                  std::lgamma(0.5 * (1.0 + mu) + nu + n));
}

const char* to_string(ParityPair pair) noexcept {
  switch (pair) {
    case ParityPair::KK: return "KK";
    case ParityPair::JJ: return "JJ";
    case ParityPair::KJ: return "KJ";
    case ParityPair::KJUnit: return "KJ1";
  }
  return "?";
}

int cross_sign(int n, int m) {
  const int s = parity_sign(n + m);
  return n <= m ? s : -s;
}

double ortho_closed(ParityPair pair, double nu, int n, int m) {
  switch (pair) {
    case ParityPair::KK: return n == m ? 0.5 / (2.0 * n + nu) : 0.0;
    case ParityPair::JJ: return n == m ? 0.5 / (2.0 * n + nu + 1.0) : 0.0;
    case ParityPair::KJ:
      return parity_sign(n + m) / (2.0 * kPi * (m - n + 0.5) * (n + m + nu + 0.5));
    case ParityPair::KJUnit: return 0.5 * cross_sign(n, m);
  }
  return 0.0;
}

IntegralResult ortho_check(ParityPair pair, double nu, int n, int m,
                           const QuadratureOptions& options) {
  if (!(nu > 0.0)) fail(ErrorCode::Domain, "ortho_check: nu must be > 0");
  if (n < 0 || m < 0) fail(ErrorCode::InvalidArgument, "ortho_check: n, m must be >= 0");
  double a = 0.0, b = 0.0, mu = 1.0;
  switch (pair) {
    case ParityPair::KK: a = 2.0 * n + nu; b = 2.0 * m + nu; break;
    case ParityPair::JJ: a = 2.0 * n + 1.0 + nu; b = 2.0 * m + 1.0 + nu; break;
    case ParityPair::KJ: a = 2.0 * n + nu; b = 2.0 * m + 1.0 + nu; break;
    case ParityPair::KJUnit: a = 2.0 * n + nu; b = 2.0 * m + 1.0 + nu; mu = 0.0; break;
  }
  IntegralResult r = bessel_product_integral(a, b, mu, options);
  r.closed_form = ortho_closed(pair, nu, n, m);
  r.abs_error = std::fabs(r.numeric - r.closed_form);
  return r;
}

IntegralResult lommel_ortho_check(double nu, int n, int m, int K) {
  if (K < 10) fail(ErrorCode::InvalidArgument, "lommel_ortho_check: K must be >= 10");
  if (!(nu > 0.0)) fail(ErrorCode::Domain, "lommel_ortho_check: nu must be > 0");
  if (n < 0 || m < 0) fail(ErrorCode::InvalidArgument, "lommel_ortho_check: n, m must be >= 0");
  IntegralResult out;
  out.closed_form = n == m ? 1.0 / (2.0 * (n + nu + 1.0)) : 0.0;
  out.segments_used = K;
  const double prefactor = 1.0 + parity_sign(n + m);
  if (prefactor == 0.0) {
    out.numeric = 0.0;
    out.abs_error = std::fabs(out.closed_form);
    return out;
  }
  const std::vector<double> zeros = bessel_zeros(nu, K);
  long double sum = 0.0L;
  double envelope = 0.0;
  const int hi = std::max(n, m) + 1;
  for (int k = 0; k < K; ++k) {
    const double j = zeros[static_cast<std::size_t>(k)];
    const BesselBatch batch = bessel_batch(nu + 1.0, j, hi);
    const double jn = batch[static_cast<std::size_t>(n)];
    const double jm = batch[static_cast<std::size_t>(m)];
    const double base = batch[0];
    const double term = prefactor * jn * jm / (j * j * base * base);
    sum += term;
    if (k >= K - 10) envelope = std::max(envelope, std::fabs(term) * j * j);
  }
  out.numeric = static_cast<double>(sum);
  out.abs_error = std::fabs(out.numeric - out.closed_form);
  out.tail_bound = 1.1 * envelope / (kPi * kPi * (K + 0.5 * nu - 0.25));
  return out;
}

}  // namespace tra
