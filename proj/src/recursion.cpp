#include "tra/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tra/error.hpp"

namespace tra {

namespace {

constexpr int kRescaleBits = 600;

struct TagName {
  FamilyTag tag;
  const char* name;
};

constexpr TagName kTagNames[] = {
    {FamilyTag::KratzerQ, "kratzer_q"},     {FamilyTag::KratzerV, "kratzer_v"},
    {FamilyTag::InvCubeQ, "invcube_q"},     {FamilyTag::InvCubeW, "invcube_w"},
    {FamilyTag::DipQuadQ, "dipquad_q"},     {FamilyTag::InvQuarticQ, "invquartic_q"},
    {FamilyTag::GeneralB1, "general_b1"},   {FamilyTag::MonicB2, "monic_b2"},
};

bool is_bessel_family(FamilyTag tag) {
  return tag != FamilyTag::GeneralB1 && tag != FamilyTag::MonicB2;
}

double pochhammer3(double c) { return c * (c + 1.0) * (c + 2.0); }

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

std::optional<int> growth_start(const CoefficientSequence& seq) {
  const int n = static_cast<int>(seq.size());
  int best = -1;
  double best_log = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double l = seq.log_abs(static_cast<std::size_t>(i));
    if (std::isinf(l)) continue;
    if (l <= best_log) {
      best_log = l;
      best = i;
    }
  }
  if (best < 0 || n - best < 4) return std::nullopt;
  double last = best_log;
  for (int i = best + 1; i < n; ++i) {
    const double l = seq.log_abs(static_cast<std::size_t>(i));
    if (std::isinf(l)) continue;
    if (!(l >= last)) return std::nullopt;
    last = l;
  }
  if (!(last > best_log)) return std::nullopt;
  return best;
}

}  // namespace

const char* to_string(FamilyTag tag) noexcept {
  for (const auto& entry : kTagNames)
    if (entry.tag == tag) return entry.name;
  return "unknown";
}

std::optional<FamilyTag> family_from_string(const std::string& name) {
  for (const auto& entry : kTagNames)
    if (name == entry.name) return entry.tag;
  return std::nullopt;
}

double kratzer_weight(int m, double nu) { return m * (m + 2.0 * nu) / (m + nu); }

void RecursionFamily::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(nu) || !finite(z) || !finite(lambda) || !finite(zeta_k2) || !finite(a) ||
      !finite(b) || !finite(alpha) || !finite(beta) || !finite(x))
    fail(ErrorCode::InvalidArgument, "recursion family: non-finite parameter");
  if (is_bessel_family(tag) && !(nu > 0.0))
    fail(ErrorCode::Domain, std::string(to_string(tag)) + ": nu must be > 0");
  if (tag == FamilyTag::InvQuarticQ && !(zeta_k2 > 0.0))
    fail(ErrorCode::Domain, "invquartic_q: zeta k^2 must be > 0");
  if ((tag == FamilyTag::GeneralB1 || tag == FamilyTag::MonicB2) && b <= 0.0 &&
      b == std::floor(b))
    fail(ErrorCode::Domain, std::string(to_string(tag)) + ": b must not be a non-positive integer");
  if (tag == FamilyTag::MonicB2 && a <= 1.0 && a == std::floor(a))
    fail(ErrorCode::Domain, "monic_b2: a must keep (n+a)(n+a-1) non-zero");
}

double RecursionFamily::seed() const {
  return tag == FamilyTag::KratzerV ? 1.0 / (2.0 * nu + 1.0) : 1.0;
}

RecurrenceRow RecursionFamily::row(int n) const {
  RecurrenceRow r;
  const bool first = n == 0;  // v_{-1} = 0, its coefficient is never used
  switch (tag) {
    case FamilyTag::KratzerQ:
      r.lower = first ? 0.0 : kratzer_weight(n - 1, nu);
      r.diag = -z;
      r.upper = kratzer_weight(n + 1, nu);
      break;
    case FamilyTag::KratzerV:
      r.lower = (n + 1.0) * (n + 2.0 * nu);
      r.diag = -z * (n + nu + 1.0);
      r.upper = (n + 1.0) * (n + 2.0 * nu + 2.0);
      break;
    case FamilyTag::InvCubeQ:
      r.lower = first ? 0.0 : 1.0 / (n + nu - 1.0);
      r.diag = -z * n * (n + 2.0 * nu);
      r.upper = 1.0 / (n + nu + 1.0);
      break;
    case FamilyTag::InvCubeW:
      r.lower = 1.0;
      r.diag = -(n + 2.0) * (n + 2.0 + nu) * (n + 2.0 + 2.0 * nu) * z;
      r.upper = 1.0;
      break;
    case FamilyTag::DipQuadQ:
      r.lower = 1.0;
      r.diag = -n * (n + nu) * (n + 2.0 * nu) * z;
      r.upper = 1.0;
      break;
    case FamilyTag::InvQuarticQ: {
      const double mu = 2.0 * n + nu + 1.0;
      const double half = 0.5 * zeta_k2;
      r.lower = first ? 0.0 : -half / ((2.0 * n + nu) * (2.0 * n + nu - 1.0));
      r.diag = mu * mu - zeta_k2 / (mu * mu - 1.0) - (2.0 * lambda + 0.25);
      r.upper = -half / ((2.0 * n + nu + 2.0) * (2.0 * n + nu + 3.0));
      break;
    }
    case FamilyTag::GeneralB1:
      r.lower = (n + alpha) * (n + beta);
      r.diag = -x * (n + a);
      r.upper = (n + 1.0) * (n + b);
      break;
    case FamilyTag::MonicB2:
      r.lower = first ? 0.0 : monic_b2_weight(n, a, b, alpha, beta);
      r.diag = -x;
      r.upper = 1.0;
      break;
  }
  return r;
}

RecursionFamily kratzer_q(double nu, double z) {
  RecursionFamily f;
  f.tag = FamilyTag::KratzerQ;
  f.nu = nu;
  f.z = z;
  return f;
}

RecursionFamily kratzer_v(double nu, double z) {
  RecursionFamily f = kratzer_q(nu, z);
  f.tag = FamilyTag::KratzerV;
  return f;
}

RecursionFamily invcube_q(double nu, double z) {
  RecursionFamily f = kratzer_q(nu, z);
  f.tag = FamilyTag::InvCubeQ;
  return f;
}

RecursionFamily invcube_w(double nu, double z) {
  RecursionFamily f = kratzer_q(nu, z);
  f.tag = FamilyTag::InvCubeW;
  return f;
}

RecursionFamily dipquad_q(double nu, double z) {
  RecursionFamily f = kratzer_q(nu, z);
  f.tag = FamilyTag::DipQuadQ;
  return f;
}

RecursionFamily invquartic_q(double nu, double lambda, double zeta_k2) {
  RecursionFamily f;
  f.tag = FamilyTag::InvQuarticQ;
  f.nu = nu;
  f.lambda = lambda;
  f.zeta_k2 = zeta_k2;
  return f;
}

RecursionFamily general_b1(double a, double b, double alpha, double beta, double x) {
  RecursionFamily f;
  f.tag = FamilyTag::GeneralB1;
  f.a = a;
  f.b = b;
  f.alpha = alpha;
  f.beta = beta;
  f.x = x;
  return f;
}

RecursionFamily monic_b2(double a, double b, double alpha, double beta, double x) {
  RecursionFamily f = general_b1(a, b, alpha, beta, x);
  f.tag = FamilyTag::MonicB2;
  return f;
}

double CoefficientSequence::value(std::size_t n) const {
  return std::ldexp(mantissa.at(n), exponent.at(n));
}

double CoefficientSequence::log_abs(std::size_t n) const {
  const double m = mantissa.at(n);
  if (m == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(std::fabs(m)) + exponent.at(n) * std::numbers::ln2;
}

std::vector<double> CoefficientSequence::values() const {
  std::vector<double> out(size());
  for (std::size_t n = 0; n < size(); ++n) out[n] = value(n);
  return out;
}

CoefficientSequence forward_solve(const RecursionFamily& family, int n_max) {
  family.validate();
  if (n_max < 0) fail(ErrorCode::InvalidArgument, "forward_solve: n_max must be >= 0");
  CoefficientSequence seq;
  seq.family = family;
  const auto count = static_cast<std::size_t>(n_max) + 1;
  seq.mantissa.resize(count);
  seq.exponent.resize(count);

  const double big = std::ldexp(1.0, kRescaleBits);
  const double small = std::ldexp(1.0, -kRescaleBits);
  double prev = 0.0;
  double cur = family.seed();
  int shift = 0;
  seq.mantissa[0] = cur;
  seq.exponent[0] = 0;
  for (int n = 0; n < n_max; ++n) {
    const RecurrenceRow r = family.row(n);
    if (r.upper == 0.0 || !std::isfinite(r.upper)) {
      std::ostringstream os;
      os << to_string(family.tag) << ": vanishing leading coefficient at n=" << n;
      fail(ErrorCode::Degenerate, os.str());
    }
    const double lower_term = prev == 0.0 ? 0.0 : r.lower * prev;
    const double next = -(lower_term + r.diag * cur) / r.upper;
    prev = cur;
    cur = next;
    const double scale = std::max(std::fabs(prev), std::fabs(cur));
    if (!std::isfinite(scale)) {
      std::ostringstream os;
      os << to_string(family.tag) << ": non-finite value at n=" << n + 1;
      fail(ErrorCode::Degenerate, os.str());
    }
    if (scale > big) {
      prev *= small;
      cur *= small;
      shift += kRescaleBits;
      seq.overflow_scaled = true;
    } else if (scale != 0.0 && scale < small) {
      prev *= big;
      cur *= big;
      shift -= kRescaleBits;
      seq.overflow_scaled = true;
    }
    seq.mantissa[static_cast<std::size_t>(n) + 1] = cur;
    seq.exponent[static_cast<std::size_t>(n) + 1] = shift;
  }
  seq.first_growth_index = growth_start(seq);
  return seq;
}

double relative_residual(const CoefficientSequence& seq, int n) {
  if (n <= 0 || static_cast<std::size_t>(n) + 1 >= seq.size())
    fail(ErrorCode::InvalidArgument, "relative_residual: need 0 < n < size-1");
  const auto i = static_cast<std::size_t>(n);
  const int e = seq.exponent[i];
  const double vm = std::ldexp(seq.mantissa[i - 1], seq.exponent[i - 1] - e);
  const double v0 = seq.mantissa[i];
  const double vp = std::ldexp(seq.mantissa[i + 1], seq.exponent[i + 1] - e);
  const RecurrenceRow r = seq.family.row(n);
  const double t1 = r.lower * vm, t2 = r.diag * v0, t3 = r.upper * vp;
  const double scale = std::fabs(t1) + std::fabs(t2) + std::fabs(t3);
  if (scale == 0.0) return 0.0;
  return std::fabs(t1 + t2 + t3) / scale;
}

double monic_b2_weight(int n, double a, double b, double alpha, double beta) {
  return n * (n + b - 1.0) * (n + alpha) * (n + beta) / ((n + a) * (n + a - 1.0));
}

PositivityResult positivity_check(double a, double b, double alpha, double beta, int n_max) {
  PositivityResult result;
  for (int n = 1; n <= n_max; ++n) {
    if (!(monic_b2_weight(n, a, b, alpha, beta) > 0.0)) {
      result.ok = false;
      result.first_violation = n;
      break;
    }
  }
  return result;
}

double envelope_exponent(const std::vector<double>& log_abs, int n_lo, int n_hi) {
  if (!(n_lo >= 100 && n_hi >= 2 * n_lo))
    fail(ErrorCode::InvalidArgument, "asymptotic_exponent: need n_hi >= 2 n_lo >= 200");
  if (log_abs.size() <= static_cast<std::size_t>(n_hi) + 8)
    fail(ErrorCode::InvalidArgument, "asymptotic_exponent: sequence shorter than n_hi + 9");
  constexpr int kWindow = 8;
  std::vector<double> amp(static_cast<std::size_t>(n_hi) + kWindow);
  for (int n = n_lo; n < n_hi + kWindow; ++n) {
    const auto i = static_cast<std::size_t>(n);
    amp[i] = 0.5 * log_add(2.0 * log_abs[i], 2.0 * log_abs[i + 1]);
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int n = n_lo; n <= n_hi; ++n) {
    double env = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < kWindow; ++j) env = std::max(env, amp[static_cast<std::size_t>(n + j)]);
    if (std::isinf(env)) {
      std::ostringstream os;
      os << "asymptotic_exponent: vanishing envelope at n=" << n;
      fail(ErrorCode::Degenerate, os.str());
    }
    const double lx = std::log(static_cast<double>(n));
    sx += lx;
    sy += env;
    sxx += lx * lx;
    sxy += lx * env;
    ++count;
  }
  const double denom = count * sxx - sx * sx;
  return (count * sxy - sx * sy) / denom;
}

double asymptotic_exponent(const CoefficientSequence& seq, int n_lo, int n_hi) {
  std::vector<double> logs(seq.size());
  for (std::size_t n = 0; n < seq.size(); ++n) logs[n] = seq.log_abs(n);
  return envelope_exponent(logs, n_lo, n_hi);
}

double support_bound(double nu) {
  if (!(nu > 0.0)) fail(ErrorCode::Domain, "support_bound: nu must be > 0");
  return 1.0 / (3.0 * pochhammer3(nu + 1.0) * pochhammer3(2.0 * nu + 1.0));
}

TridiagonalSymmetric monic_w_jacobi(double nu, int order) {
  if (!(nu > 0.0)) fail(ErrorCode::Domain, "monic_w_jacobi: nu must be > 0");
  if (order < 1) fail(ErrorCode::InvalidArgument, "monic_w_jacobi: order must be >= 1");
  TridiagonalSymmetric t;
  t.diag.assign(static_cast<std::size_t>(order), 0.0);
  for (int n = 1; n < order; ++n) {
    const double c = 1.0 / ((n + 1.0) * (n + 2.0) * (n + nu + 1.0) * (n + nu + 2.0) *
                            (n + 2.0 * nu + 1.0) * (n + 2.0 * nu + 2.0));
    t.offdiag.push_back(std::sqrt(c));
  }
  return t;
}

}  // namespace tra
