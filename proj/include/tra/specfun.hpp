#pragma once

// Special-function kernel: Bessel J of real order, batched discrete-index
// orders, zeros of J, gamma magnitudes, confluent hypergeometric series and
// Lommel polynomials. Everything here is a pure function.

#include <complex>
#include <vector>

namespace tra {

struct AccuracyPolicy {
  double rel_tol = 1e-12;  // in (0, 1e-3]
  int max_terms = 500;     // >= 16, caps every power series

  void validate() const;
};

enum class Parity { Even, Odd };

/// J_nu(x) for real order nu and x >= 0.
///
/// Ascending series (long double) for x <= 12 or x^2 <= nu + 1, the Hankel
/// large-argument expansion when it converges to working precision, and
/// Steed's continued-fraction method in between. Negative orders are reached
/// through the downward recurrence J_{nu-1} = (2 nu / x) J_nu - J_{nu+1},
/// which is the dominant direction and therefore stable.
double bessel_j(double nu, double x, const AccuracyPolicy& policy = {});

/// J'_nu(x), from J'_nu = (nu/x) J_nu - J_{nu+1}.
double bessel_j_prime(double nu, double x, const AccuracyPolicy& policy = {});

struct BesselBatch {
  double nu = 0.0;
  double x = 0.0;
  std::vector<double> values;  // J_{nu}(x), J_{nu+1}(x), ..., J_{nu+N}(x)

  double operator[](std::size_t n) const { return values[n]; }
  std::size_t size() const { return values.size(); }
};

/// J_{nu+n}(x) for n = 0..n_max by backward recurrence seeded with the exact
/// ratio J_{nu+N+1}/J_{nu+N} (continued fraction) and normalized against
/// bessel_j at orders nu and nu+1.
BesselBatch bessel_batch(double nu, double x, int n_max);

/// First `count` positive zeros of J_nu, ascending.
std::vector<double> bessel_zeros(double nu, int count);

/// McMahon's large-k estimate of the k-th zero of J_nu (k >= 1).
double mcmahon_zero(double nu, int k);

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Re ln Gamma(x + iy). Throws Domain at the poles.
double log_gamma_abs(double x, double y);

/// |Gamma(x + iy)|. Throws Domain at the poles.
double gamma_abs(double x, double y);

/// 1/Gamma(x) for real x, zero at the poles.
double reciprocal_gamma(double x);

struct Hyp1f1Result {
  std::complex<double> value;
  double cancellation = 1.0;  // largest term magnitude / |value|
  int terms = 0;
  bool kummer = false;        // evaluated as e^z 1F1(b-a; b; -z)
  bool extended = false;      // needed the binary128 pass
};

/// 1F1(a; b; z) by its power series with compensated summation. Returns the
/// value with diagnostics; throws AccuracyError when the estimated
/// cancellation loss exceeds policy.rel_tol even in binary128.
Hyp1f1Result hyp1f1_eval(std::complex<double> a, std::complex<double> b,
                         std::complex<double> z,
                         const AccuracyPolicy& policy = {});

inline std::complex<double> hyp1f1(std::complex<double> a,
                                   std::complex<double> b,
                                   std::complex<double> z,
                                   const AccuracyPolicy& policy = {}) {
  return hyp1f1_eval(a, b, z, policy).value;
}

/// Lommel polynomial h_{n,nu}(z): h_0 = 1, h_1 = 2 nu z,
/// h_{n+1} = 2 z (n + nu) h_n - h_{n-1}. h_{-1} is taken as 0.
double lommel_h(int n, double nu, double z);

/// Even (J_{2n+nu}) and odd (J_{2n+1+nu}) discrete Bessel functions.
double discrete_bessel(Parity parity, int n, double nu, double x);

}  // namespace tra
