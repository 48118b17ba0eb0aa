#include "tra/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "tra/error.hpp"

namespace tra {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;
constexpr int kMaxFractionIterations = 1000000;

// Largest argument handled by the ascending series for small orders.
constexpr double kSeriesArgument = 12.0;

bool is_nonpositive_integer(double v) {
  return v <= 0.0 && v == std::floor(v);
}

double series_j(double nu, double x, const AccuracyPolicy& policy) {
  const long double half = 0.5L * x;
  const long double log_first =
      static_cast<long double>(nu) * std::log(half) - std::lgamma(nu + 1.0L);
  long double term = std::exp(log_first);
  if (term == 0.0L) return 0.0;
  const long double q = -half * half;
  long double sum = term;
  long double carry = 0.0L;
  for (int k = 1; k <= policy.max_terms; ++k) {
    term *= q / (static_cast<long double>(k) * (k + nu));
    const long double y = term - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    if (std::fabs(term) <= 1e-20L * std::fabs(sum) || term == 0.0L)
      return static_cast<double>(sum);
  }
  std::ostringstream os;
  os << "bessel_j series did not converge for nu=" << nu << ", x=" << x
     << " within " << policy.max_terms << " terms";
  throw AccuracyError(os.str(), static_cast<double>(sum));
}

// Hankel expansion; empty when the asymptotic terms start to grow before
// reaching double precision.
std::optional<double> hankel_j(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0, term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * x);
    const double mag = std::fabs(term);
    if (mag > last && mag > 1e-17) return std::nullopt;
    last = mag;
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
    }
    if (mag <= 0.25 * kEps * std::max(std::fabs(p), std::fabs(q))) {
      converged = true;
      break;
    }
  }
  if (!converged) return std::nullopt;
  const long double phase =
      static_cast<long double>(x) -
      std::fmod(0.5L * nu + 0.25L, 2.0L) * std::numbers::pi_v<long double>;
  const double c = static_cast<double>(std::cos(phase));
  const double s = static_cast<double>(std::sin(phase));
  return std::sqrt(2.0 / (kPi * x)) * (p * c - q * s);
}

// Steed's method (CF1 + CF2 with Wronskian normalization), x >= 2.
double steed_j(double nu, double x) {
  const int nl = std::max(0, static_cast<int>(nu - x + 1.5));
  const double xmu = nu - nl;
  const double xmu2 = xmu * xmu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  const double w = xi2 / kPi;

  int isign = 1;
  double h = std::max(nu * xi, kFpMin);
  double b = xi2 * nu, d = 0.0, c = h;
  int i = 1;
  for (; i < kMaxFractionIterations; ++i) {
    b += xi2;
    d = b - d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = b - 1.0 / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (d < 0.0) isign = -isign;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  if (i >= kMaxFractionIterations)
    throw AccuracyError("bessel_j continued fraction (CF1) failed", 0.0);

  double rjl = isign * kFpMin;
  double rjpl = h * rjl;
  double rjl1 = rjl;
  double fact = nu * xi;
  for (int l = nl; l >= 1; --l) {
    const double tmp = fact * rjl + rjpl;
    fact -= xi;
    rjpl = fact * tmp - rjl;
    rjl = tmp;
    if (std::fabs(rjl) > 1e250) {
      rjl *= 1e-250;
      rjpl *= 1e-250;
      rjl1 *= 1e-250;
    }
  }
  if (rjl == 0.0) rjl = kEps;
  const double f = rjpl / rjl;

  double a = 0.25 - xmu2;
  double p = -0.5 * xi;
  double q = 1.0;
  const double br = 2.0 * x;
  double bi = 2.0;
  double ff = a * xi / (p * p + q * q);
  double cr = br + q * ff;
  double ci = bi + p * ff;
  double den = br * br + bi * bi;
  double dr = br / den;
  double di = -bi / den;
  double dlr = cr * dr - ci * di;
  double dli = cr * di + ci * dr;
  double tmp = p * dlr - q * dli;
  q = p * dli + q * dlr;
  p = tmp;
  for (i = 2; i < kMaxFractionIterations; ++i) {
    a += 2 * (i - 1);
    bi += 2.0;
    dr = a * dr + br;
    di = a * di + bi;
    if (std::fabs(dr) + std::fabs(di) < kFpMin) dr = kFpMin;
    ff = a / (cr * cr + ci * ci);
    cr = br + cr * ff;
    ci = bi - ci * ff;
    if (std::fabs(cr) + std::fabs(ci) < kFpMin) cr = kFpMin;
    den = dr * dr + di * di;
    dr /= den;
    di /= -den;
    dlr = cr * dr - ci * di;
    dli = cr * di + ci * dr;
    tmp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = tmp;
    if (std::fabs(dlr - 1.0) + std::fabs(dli) < kEps) break;
  }
  if (i >= kMaxFractionIterations)
    throw AccuracyError("bessel_j continued fraction (CF2) failed", 0.0);

  const double gam = (p - f) / q;
  double rjmu = std::sqrt(w / ((p - f) * gam + q));
  rjmu = std::copysign(rjmu, rjl);
  return rjl1 * (rjmu / rjl);
}

double bessel_j_nonneg(double nu, double x, const AccuracyPolicy& policy) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x <= kSeriesArgument || x * x <= nu + 1.0) return series_j(nu, x, policy);
  if (auto v = hankel_j(nu, x)) return *v;
  return steed_j(nu, x);
}

// Ratio J_{mu+1}(x) / J_mu(x) by modified Lentz on the CF1 fraction.
double bessel_ratio(double mu, double x) {
  constexpr double tiny = 1e-300;
  double f = tiny, c = tiny, d = 0.0;
  for (int j = 1; j < kMaxFractionIterations; ++j) {
    const double bj = 2.0 * (mu + j) / x;
    const double aj = j == 1 ? 1.0 : -1.0;
    d = bj + aj * d;
    if (d == 0.0) d = tiny;
    c = bj + aj / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < kEps) return f;
  }
  throw AccuracyError("bessel ratio continued fraction failed", f);
}

}  // namespace

void AccuracyPolicy::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3))
    fail(ErrorCode::InvalidArgument, "AccuracyPolicy.rel_tol must lie in (0, 1e-3]");
  if (max_terms < 16)
    fail(ErrorCode::InvalidArgument, "AccuracyPolicy.max_terms must be >= 16");
}

double bessel_j(double nu, double x, const AccuracyPolicy& policy) {
  policy.validate();
  if (!std::isfinite(nu) || !std::isfinite(x))
    fail(ErrorCode::Domain, "bessel_j: non-finite input");
  if (x < 0.0) fail(ErrorCode::Domain, "bessel_j: x must be >= 0");
  if (nu >= 0.0) return bessel_j_nonneg(nu, x, policy);

  if (x == 0.0) {
    if (nu == std::floor(nu)) return 0.0;
    fail(ErrorCode::Domain, "bessel_j: J_nu(0) is unbounded for negative non-integer nu");
  }
  const double steps = std::ceil(-nu);
  double order = nu + steps;  // in [0, 1)
  double upper = bessel_j_nonneg(order + 1.0, x, policy);
  double current = bessel_j_nonneg(order, x, policy);
  for (int s = 0; s < static_cast<int>(steps); ++s) {
    const double lower = 2.0 * order / x * current - upper;
    upper = current;
    current = lower;
    order -= 1.0;
  }
  return current;
}

double bessel_j_prime(double nu, double x, const AccuracyPolicy& policy) {
  if (x == 0.0) {
    if (nu == 0.0 || nu > 1.0) return 0.0;
    if (nu == 1.0) return 0.5;
    fail(ErrorCode::Domain, "bessel_j_prime: derivative unbounded at x = 0");
  }
  return nu / x * bessel_j(nu, x, policy) - bessel_j(nu + 1.0, x, policy);
}

BesselBatch bessel_batch(double nu, double x, int n_max) {
  if (!(nu > 0.0) || !std::isfinite(nu))
    fail(ErrorCode::Domain, "bessel_batch: nu must be > 0");
  if (!(x >= 0.0) || !std::isfinite(x))
    fail(ErrorCode::Domain, "bessel_batch: x must be >= 0");
  if (n_max < 0) fail(ErrorCode::InvalidArgument, "bessel_batch: n_max must be >= 0");

  BesselBatch batch{nu, x, std::vector<double>(static_cast<std::size_t>(n_max) + 1, 0.0)};
  if (x == 0.0) return batch;

  auto& v = batch.values;
  const double j0 = bessel_j(nu, x);
  if (n_max == 0) {
    v[0] = j0;
    return batch;
  }
  const double j1 = bessel_j(nu + 1.0, x);

  // Unnormalized backward pass from the top order. Rescale on overflow: the
  // entries pushed towards zero are far below anything representable after
  // normalization anyway.
  double above = bessel_ratio(nu + n_max, x);  // J_{N+1}/J_N with J_N := 1
  v[static_cast<std::size_t>(n_max)] = 1.0;
  for (int n = n_max; n >= 1; --n) {
    const double here = v[static_cast<std::size_t>(n)];
    const double below = 2.0 * (nu + n) / x * here - above;
    v[static_cast<std::size_t>(n) - 1] = below;
    above = here;
    if (std::fabs(below) > 1e250) {
      for (int m = n - 1; m <= n_max; ++m) v[static_cast<std::size_t>(m)] *= 1e-250;
      above *= 1e-250;
    }
  }

  const double u0 = v[0], u1 = v[1];
  const double scale_ref = std::max(std::fabs(u0), std::fabs(u1));
  const double a0 = u0 / scale_ref, a1 = u1 / scale_ref;
  const double s = (a0 * j0 + a1 * j1) / (a0 * a0 + a1 * a1) / scale_ref;
  for (auto& value : v) value *= s;
  v[0] = j0;
  v[1] = j1;
  return batch;
}

double mcmahon_zero(double nu, int k) {
  const double beta = (k + 0.5 * nu - 0.25) * kPi;
  const double mu = 4.0 * nu * nu;
  const double e = 8.0 * beta;
  return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
}

std::vector<double> bessel_zeros(double nu, int count) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "bessel_zeros: count must be >= 1");
  if (!(nu >= 0.0) || !std::isfinite(nu))
    fail(ErrorCode::Domain, "bessel_zeros: nu must be >= 0");

  auto j = [nu](double x) { return bessel_j(nu, x); };
  std::vector<double> zeros;
  zeros.reserve(static_cast<std::size_t>(count));
  double prev = 0.0;
  for (int k = 1; k <= count; ++k) {
    // Zeros are more than 2.4 apart, so a unit bracket holds at most one.
    double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
    bool bracketed = false;
    const double guess = mcmahon_zero(nu, k);
    if (guess - 0.5 > prev + 1.0) {
      lo = guess - 0.5;
      hi = guess + 0.5;
      flo = j(lo);
      fhi = j(hi);
      bracketed = flo * fhi <= 0.0;
    }
    if (!bracketed) {
      lo = k == 1 ? std::max(nu, 0.5) : prev + 1.0;
      flo = j(lo);
      for (int step = 0; step < 100000 && !bracketed; ++step) {
        hi = lo + 0.5;
        fhi = j(hi);
        if (flo * fhi <= 0.0) {
          bracketed = true;
        } else {
          lo = hi;
          flo = fhi;
        }
      }
      if (!bracketed) {
        std::ostringstream os;
        os << "bessel_zeros: no sign change found for zero k=" << k;
        fail(ErrorCode::Accuracy, os.str());
      }
    }
    if (flo == 0.0) hi = lo;
    if (fhi == 0.0) lo = hi;
    while (hi - lo > 1e-13 * std::max(1.0, lo)) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = j(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if (flo * fm < 0.0) {
        hi = mid;
      } else {
        lo = mid;
        flo = fm;
      }
    }
    double root = 0.5 * (lo + hi);
    const double jr = j(root);
    const double jp = bessel_j_prime(nu, root);
    if (jp != 0.0) {
      const double polished = root - jr / jp;
      if (std::fabs(polished - root) <= 1e-12 * std::max(1.0, root)) root = polished;
    }
    if (std::fabs(j(root)) > 1e-10) {
      std::ostringstream os;
      os << "bessel_zeros: refinement of zero k=" << k << " did not converge";
      throw AccuracyError(os.str(), root);
    }
    zeros.push_back(root);
    prev = root;
  }
  return zeros;
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorCode::Domain, "log_gamma: x must be > 0");
  return std::lgamma(x);
}

double log_gamma_abs(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y))
    fail(ErrorCode::Domain, "gamma_abs: non-finite input");
  if (y == 0.0) {
    if (is_nonpositive_integer(x)) fail(ErrorCode::Domain, "gamma_abs: pole of Gamma");
    return std::lgamma(x);
  }
  if (x < 0.5) {
    // |Gamma(z)| = pi / (|sin(pi z)| |Gamma(1 - z)|)
    const double py = kPi * std::fabs(y);
    double log_sin;
    if (py > 30.0) {
      log_sin = py - std::numbers::ln2;
    } else {
      const double s = std::sin(kPi * x);
      const double sh = std::sinh(py);
      log_sin = 0.5 * std::log(s * s + sh * sh);
    }
    return std::log(kPi) - log_sin - log_gamma_abs(1.0 - x, -y);
  }
  // Shift to |z| large, then Stirling with Bernoulli corrections.
  double shift = 0.0;
  std::complex<double> z(x, y);
  while (z.real() < 15.0) {
    shift += 0.5 * std::log(std::norm(z));
    z += 1.0;
  }
  static constexpr std::array<double, 8> kStirling = {
      1.0 / 12.0,         -1.0 / 360.0,      1.0 / 1260.0,        -1.0 / 1680.0,
      1.0 / 1188.0,       -691.0 / 360360.0, 1.0 / 156.0,         -3617.0 / 122400.0};
  const std::complex<double> inv = 1.0 / z;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> corr = 0.0;
  std::complex<double> power = inv;
  for (double c : kStirling) {
    corr += c * power;
    power *= inv2;
  }
  const std::complex<double> lg =
      (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + corr;
  return lg.real() - shift;
}

double gamma_abs(double x, double y) { return std::exp(log_gamma_abs(x, y)); }

double reciprocal_gamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

namespace {

template <class Real>
struct Cplx {
  Real re, im;
};

template <class Real>
Cplx<Real> mul(Cplx<Real> a, Cplx<Real> b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class Real>
Cplx<Real> div(Cplx<Real> a, Cplx<Real> b) {
  // Smith's algorithm.
  const Real abr = b.re < 0 ? -b.re : b.re;
  const Real abi = b.im < 0 ? -b.im : b.im;
  if (abr >= abi) {
    const Real r = b.im / b.re;
    const Real d = b.re + b.im * r;
    return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
  }
  const Real r = b.re / b.im;
  const Real d = b.re * r + b.im;
  return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}

template <class Real>
long double magnitude(Cplx<Real> a) {
  return std::hypot(static_cast<long double>(a.re), static_cast<long double>(a.im));
}

struct SeriesOutcome {
  std::complex<double> value;
  long double cancellation = 1.0L;
  int terms = 0;
  bool converged = false;
};

template <class Real>
SeriesOutcome kummer_series(std::complex<double> a, std::complex<double> b,
                            std::complex<double> z, int max_terms) {
  using C = Cplx<Real>;
  const C ca{a.real(), a.imag()}, cb{b.real(), b.imag()}, cz{z.real(), z.imag()};
  C term{1, 0};
  C sum{1, 0};
  C carry{0, 0};
  long double largest = 1.0L;
  SeriesOutcome out;
  const long double zmag = std::abs(z);
  for (int k = 0; k < max_terms; ++k) {
    const C num = mul(C{ca.re + k, ca.im}, cz);
    const C den{(cb.re + k) * (k + 1), cb.im * (k + 1)};
    term = mul(term, div(num, den));
    // Kahan on each component.
    const C y{term.re - carry.re, term.im - carry.im};
    const C t{sum.re + y.re, sum.im + y.im};
    carry = {(t.re - sum.re) - y.re, (t.im - sum.im) - y.im};
    sum = t;
    const long double tmag = magnitude(term);
    largest = std::max(largest, tmag);
    out.terms = k + 1;
    if (tmag == 0.0L || (k + 1 > zmag && tmag <= 1e-36L * magnitude(sum))) {
      out.converged = true;
      break;
    }
    if (k + 1 > zmag && tmag <= std::numeric_limits<Real>::epsilon() * 1e-2L * magnitude(sum)) {
      out.converged = true;
      break;
    }
  }
  out.value = {static_cast<double>(sum.re), static_cast<double>(sum.im)};
  const long double smag = magnitude(sum);
  out.cancellation = smag > 0.0L ? largest / smag : std::numeric_limits<long double>::infinity();
  return out;
}

#ifdef __SIZEOF_FLOAT128__
using ExtendedReal = __float128;
constexpr long double kExtendedEps = 1.925929944387235853055977942584927e-34L;
#else
using ExtendedReal = long double;
constexpr long double kExtendedEps = std::numeric_limits<long double>::epsilon();
#endif

}  // namespace

Hyp1f1Result hyp1f1_eval(std::complex<double> a, std::complex<double> b,
                         std::complex<double> z, const AccuracyPolicy& policy) {
  policy.validate();
  if (b.imag() == 0.0 && is_nonpositive_integer(b.real()))
    fail(ErrorCode::Domain, "hyp1f1: b must not be a non-positive integer");

  Hyp1f1Result result;
  if (z == 0.0) {
    result.value = 1.0;
    return result;
  }

  const long double eps_ld = std::numeric_limits<long double>::epsilon();
  auto estimate = [](const SeriesOutcome& s, long double eps) {
    return s.cancellation * eps;
  };

  SeriesOutcome direct = kummer_series<long double>(a, b, z, policy.max_terms);
  bool use_kummer = false;
  if (z.real() < 0.0) {
    SeriesOutcome flipped = kummer_series<long double>(b - a, b, -z, policy.max_terms);
    if (flipped.converged &&
        (!direct.converged || flipped.cancellation < direct.cancellation)) {
      direct = flipped;
      use_kummer = true;
    }
  }
  SeriesOutcome chosen = direct;
  if (!chosen.converged || estimate(chosen, eps_ld) > policy.rel_tol) {
    chosen = use_kummer ? kummer_series<ExtendedReal>(b - a, b, -z, policy.max_terms)
                        : kummer_series<ExtendedReal>(a, b, z, policy.max_terms);
    result.extended = true;
    if (!chosen.converged || estimate(chosen, kExtendedEps) > policy.rel_tol) {
      std::ostringstream os;
      os << "hyp1f1: cancellation ratio " << static_cast<double>(chosen.cancellation)
         << " exceeds the precision budget (terms=" << chosen.terms << ")";
      const std::complex<double> partial = use_kummer ? std::exp(z) * chosen.value : chosen.value;
      throw AccuracyError(os.str(), std::abs(partial));
    }
  }
  result.value = use_kummer ? std::exp(z) * chosen.value : chosen.value;
  result.cancellation = static_cast<double>(chosen.cancellation);
  result.terms = chosen.terms;
  result.kummer = use_kummer;
  return result;
}

double lommel_h(int n, double nu, double z) {
  if (n < -1) fail(ErrorCode::InvalidArgument, "lommel_h: n must be >= -1");
  if (n == -1) return 0.0;
  double prev = 0.0, cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = 2.0 * z * (k + nu) * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double discrete_bessel(Parity parity, int n, double nu, double x) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "discrete_bessel: n must be >= 0");
  const double order = 2.0 * n + nu + (parity == Parity::Odd ? 1.0 : 0.0);
  return bessel_j(order, x);
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::Accuracy: return "accuracy error";
    case ErrorCode::Degenerate: return "degenerate input";
    case ErrorCode::Supercritical: return "supercritical";
    case ErrorCode::NotFound: return "not found";
    case ErrorCode::UndefinedPhase: return "undefined phase";
    case ErrorCode::Resolution: return "resolution error";
    case ErrorCode::NoRegularSolution: return "no regular solution";
  }
  return "unknown";
}

}  // namespace tra
