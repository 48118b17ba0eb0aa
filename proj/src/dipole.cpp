#include "tra/dipole.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tra/error.hpp"

namespace tra {

namespace {

// Number of eigenvalues strictly less than x.
int sturm_count(const TridiagonalSymmetric& t, double x) {
  const double tiny = std::numeric_limits<double>::min();
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : t.offdiag[i - 1] * t.offdiag[i - 1];
    q = t.diag[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

void gershgorin(const TridiagonalSymmetric& t, double& lo, double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  const std::size_t n = t.diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::fabs(t.offdiag[i - 1]);
    if (i + 1 < n) r += std::fabs(t.offdiag[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
}

void check(const TridiagonalSymmetric& t) {
  if (t.diag.empty()) fail(ErrorCode::InvalidArgument, "eigen_tridiag: empty matrix");
  if (t.offdiag.size() + 1 != t.diag.size())
    fail(ErrorCode::InvalidArgument, "eigen_tridiag: offdiag must have size-1 entries");
  for (double v : t.diag)
    if (!std::isfinite(v)) fail(ErrorCode::Domain, "eigen_tridiag: non-finite entry");
  for (double v : t.offdiag)
    if (!std::isfinite(v)) fail(ErrorCode::Domain, "eigen_tridiag: non-finite entry");
}

double bisect_eigenvalue(const TridiagonalSymmetric& t, int k, double lo, double hi) {
  // Invariant: count(lo) <= k < count(hi).
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double coupling(double d, int m, int i) {
  const double a = i + m + 1.0;
  return -d * std::sqrt((i + 1.0) * (i + 2.0 * m + 1.0) / (a * a - 0.25));
}

double lower_coupling(double d, int m, int i) {
  const double a = i + m;
  return -d * std::sqrt(i * (i + 2.0 * m) / (a * a - 0.25));
}

}  // namespace

double TridiagonalSymmetric::norm_bound() const {
  double lo = 0.0, hi = 0.0;
  gershgorin(*this, lo, hi);
  return std::max(std::fabs(lo), std::fabs(hi));
}

TridiagonalSymmetric build_T(double d, int m, int size) {
  if (size < 2) fail(ErrorCode::InvalidArgument, "build_T: size must be >= 2");
  if (m < 0) fail(ErrorCode::InvalidArgument, "build_T: m must be >= 0");
  if (!(d >= 0.0) || !std::isfinite(d)) fail(ErrorCode::Domain, "build_T: d must be >= 0");
  TridiagonalSymmetric t;
  t.diag.resize(static_cast<std::size_t>(size));
  t.offdiag.resize(static_cast<std::size_t>(size) - 1);
  for (int i = 0; i < size; ++i) {
    const double a = i + m + 0.5;
    t.diag[static_cast<std::size_t>(i)] = a * a;
  }
  for (int i = 0; i + 1 < size; ++i) {
    const double upper = coupling(d, m, i);
    // The sub-diagonal formula one row down must reproduce the same entry.
    const double lower = lower_coupling(d, m, i + 1);
    if (std::fabs(upper - lower) > 1e-14 * std::max(1.0, std::fabs(upper)))
      fail(ErrorCode::Degenerate, "build_T: sub- and super-diagonal couplings disagree");
    t.offdiag[static_cast<std::size_t>(i)] = upper;
  }
  return t;
}

double eigenvalue(const TridiagonalSymmetric& t, int k) {
  check(t);
  if (k < 0 || static_cast<std::size_t>(k) >= t.size())
    fail(ErrorCode::InvalidArgument, "eigenvalue: index out of range");
  double lo = 0.0, hi = 0.0;
  gershgorin(t, lo, hi);
  const double pad = 1e-12 * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi)));
  return bisect_eigenvalue(t, k, lo - pad, hi + pad);
}

std::vector<double> eigen_tridiag(const TridiagonalSymmetric& t) {
  check(t);
  double lo = 0.0, hi = 0.0;
  gershgorin(t, lo, hi);
  const double pad = 1e-12 * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi)));
  lo -= pad;
  hi += pad;
  const int n = static_cast<int>(t.size());
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) values[static_cast<std::size_t>(k)] = bisect_eigenvalue(t, k, lo, hi);
  std::sort(values.begin(), values.end());
  return values;
}

DipoleSpectrum chi_values(double d, int m, int size) {
  DipoleSpectrum s;
  s.m = m;
  s.d = d;
  s.size = size;
  s.eigenvalues = eigen_tridiag(build_T(d, m, size));
  bool any = false;
  for (double lambda : s.eigenvalues) {
    const bool super = lambda <= 0.0;
    any = any || !super;
    s.supercritical.push_back(super);
    if (lambda > 0.0) {
      s.chi.push_back(std::sqrt(lambda) - 0.5);
    } else if (lambda == 0.0) {
      s.chi.push_back(-0.5);
    } else {
      s.chi.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  if (!any) {
    std::ostringstream os;
    os << "dipole moment d=" << d << " is supercritical for m=" << m
       << ": no real chi exists; increase |m|";
    fail(ErrorCode::Supercritical, os.str());
  }
  return s;
}

ConvergedChi converged_chi(double d, int m, int branch, int size, double tol) {
  if (branch < 0) fail(ErrorCode::InvalidArgument, "converged_chi: branch must be >= 0");
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "converged_chi: tol must be > 0");
  size = std::max(size, branch + 2);
  double previous = eigenvalue(build_T(d, m, size), branch);
  for (int doubling = 0; doubling < 8; ++doubling) {
    const int next = 2 * size;
    const double current = eigenvalue(build_T(d, m, next), branch);
    const double change = std::fabs(current - previous);
    if (change < tol) {
      if (current <= 0.0) {
        std::ostringstream os;
        os << "dipole moment d=" << d << " is supercritical for m=" << m << " branch "
           << branch << ": increase |m|";
        fail(ErrorCode::Supercritical, os.str());
      }
      return {std::sqrt(current) - 0.5, current, next, change};
    }
    previous = current;
    size = next;
  }
  throw AccuracyError("converged_chi: eigenvalue did not settle under truncation doubling",
                      std::sqrt(std::max(previous, 0.0)) - 0.5);
}

CriticalDipole critical_dipole(int m, int size, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "critical_dipole: tol must be > 0");
  auto lowest = [&](double d) { return eigenvalue(build_T(d, m, size), 0); };
  double lo = 0.0;
  double hi = 0.5;
  while (lowest(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 100.0) {
      if (lowest(100.0) > 0.0) {
        std::ostringstream os;
        os << "critical_dipole: lowest eigenvalue stays positive for d <= 100 (m=" << m
           << ", size=" << size << ")";
        fail(ErrorCode::NotFound, os.str());
      }
      hi = 100.0;
      break;
    }
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (lowest(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), size};
}

}  // namespace tra
