#pragma once

// Numerical checks of the x^{-mu} Bessel-product integrals, the discrete
// Bessel orthogonality and cross integrals, and the Lommel-sum orthogonality
// over the zeros of J_nu.

#include <string>

namespace tra {

struct IntegralResult {
  double numeric = 0.0;
  double closed_form = 0.0;
  double abs_error = 0.0;
  int segments_used = 0;
  double tail_bound = 0.0;
};

struct QuadratureOptions {
  int segments_per_pi = 2;    // Gauss-Legendre-16 panels per length pi
  double epsilon = 1e-10;     // lower cut, the [0, epsilon] piece is analytic
  int extrapolation_terms = 6;
};

/// Closed form of int_0^inf x^{-mu} J_{n+nu} J_{m+nu} dx,
/// valid for n+m+2nu+1 > mu > 0.
double weber_schafheitlin_closed(double nu, int n, int m, double mu);

/// Numeric value of the same integral for orders a, b and weight x^{-mu}
/// (mu >= 0). The tail beyond the last panel is removed by extrapolating
/// the partial integrals at multiples of pi in powers X^{-(mu+j)};
/// tail_bound is the spread between the last two extrapolation orders.
IntegralResult bessel_product_integral(double a, double b, double mu,
                                       const QuadratureOptions& options = {});

IntegralResult weber_schafheitlin(double nu, int n, int m, double mu,
                                  const QuadratureOptions& options = {});

/// The two equal-index closed forms: the Gamma(mu)/Gamma((1+mu)/2)^2 form
/// and the Gamma(mu/2)^2 form. They agree by the duplication formula.
double equal_index_form_a(double nu, int n, double mu);
double equal_index_form_b(double nu, int n, double mu);

enum class ParityPair { KK, JJ, KJ, KJUnit };

const char* to_string(ParityPair pair) noexcept;

/// Sign of the unit-weight cross integral: (-1)^{n+m} for n <= m,
/// -(-1)^{n+m} for n > m.
int cross_sign(int n, int m);

/// Closed form of the discrete-Bessel integral for the given pair.
double ortho_closed(ParityPair pair, double nu, int n, int m);

/// KK, JJ and KJ with weight x^{-1}; KJUnit with weight 1.
IntegralResult ortho_check(ParityPair pair, double nu, int n, int m,
                           const QuadratureOptions& options = {});

/// [1+(-1)^{n+m}] sum_{k<=K} J_{n+nu+1}(j_k) J_{m+nu+1}(j_k) / (j_k^2 J_{nu+1}(j_k)^2)
/// against delta_{nm}/(2(n+nu+1)), j_k the zeros of J_nu.
IntegralResult lommel_ortho_check(double nu, int n, int m, int K);

}  // namespace tra
