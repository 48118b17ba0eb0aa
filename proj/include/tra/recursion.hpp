#pragma once

// Three-term recurrence engine for the expansion coefficients and the
// orthogonal polynomials attached to them.
//
// Every family is written as a row relation
//   lower(n) v_{n-1} + diag(n) v_n + upper(n) v_{n+1} = 0,  n >= 0,
// with v_{-1} = 0 and v_0 fixed by the family, and solved forward.

#include <optional>
#include <string>
#include <vector>

#include "tra/dipole.hpp"

namespace tra {

enum class FamilyTag {
  KratzerQ,
  KratzerV,
  InvCubeQ,
  InvCubeW,
  DipQuadQ,
  InvQuarticQ,
  GeneralB1,
  MonicB2,
};

const char* to_string(FamilyTag tag) noexcept;
std::optional<FamilyTag> family_from_string(const std::string& name);

struct RecurrenceRow {
  double lower = 0.0;
  double diag = 0.0;
  double upper = 0.0;
};

struct RecursionFamily {
  FamilyTag tag = FamilyTag::KratzerQ;
  double nu = 0.5;
  double z = 0.0;
  // InvQuarticQ
  double lambda = 0.0;
  double zeta_k2 = 0.0;
  // GeneralB1 / MonicB2, evaluated at x
  double a = 0.0, b = 0.0, alpha = 0.0, beta = 0.0, x = 0.0;

  void validate() const;
  double seed() const;              // v_0
  RecurrenceRow row(int n) const;   // relation centred on v_n
};

RecursionFamily kratzer_q(double nu, double z);
RecursionFamily kratzer_v(double nu, double z);
RecursionFamily invcube_q(double nu, double z);
RecursionFamily invcube_w(double nu, double z);
RecursionFamily dipquad_q(double nu, double z);
RecursionFamily invquartic_q(double nu, double lambda, double zeta_k2);
RecursionFamily general_b1(double a, double b, double alpha, double beta, double x);
RecursionFamily monic_b2(double a, double b, double alpha, double beta, double x);

/// Kratzer weight A_m = m(m+2 nu)/(m+nu).
double kratzer_weight(int m, double nu);

/// Values v_n = mantissa[n] * 2^exponent[n]; the exponent is shared by
/// stretches of the sequence and moves only when the working pair is
/// rescaled.
struct CoefficientSequence {
  RecursionFamily family;
  std::vector<double> mantissa;
  std::vector<int> exponent;
  std::optional<int> first_growth_index;
  bool overflow_scaled = false;

  std::size_t size() const { return mantissa.size(); }
  double value(std::size_t n) const;     // may be 0 or inf outside double range
  double log_abs(std::size_t n) const;   // ln |v_n|, -inf for an exact zero
  std::vector<double> values() const;
};

CoefficientSequence forward_solve(const RecursionFamily& family, int n_max);

/// |lower v_{n-1} + diag v_n + upper v_{n+1}| over the sum of the magnitudes
/// of the three products, for 0 < n < size-1.
double relative_residual(const CoefficientSequence& seq, int n);

/// Monic weight n(n+b-1)(n+alpha)(n+beta)/((n+a)(n+a-1)).
double monic_b2_weight(int n, double a, double b, double alpha, double beta);

struct PositivityResult {
  bool ok = true;
  std::optional<int> first_violation;
};

PositivityResult positivity_check(double a, double b, double alpha, double beta, int n_max);

/// Slope of ln(envelope) against ln n over [n_lo, n_hi]. The envelope is the
/// running maximum over 8 indices of the quadrature amplitude
/// sqrt(v_n^2 + v_{n+1}^2). Needs n_hi >= 2 n_lo >= 200 and size > n_hi + 8.
double asymptotic_exponent(const CoefficientSequence& seq, int n_lo, int n_hi);

/// Same fit on caller-supplied ln|v_n| values.
double envelope_exponent(const std::vector<double>& log_abs, int n_lo, int n_hi);

/// 1/(3 (nu+1)_3 (2nu+1)_3).
double support_bound(double nu);

/// Jacobi matrix of the monic inverse-cube W polynomials: zero diagonal,
/// off-diagonal sqrt(c_n), c_n = 1/((n+1)_2 (n+nu+1)_2 (n+2nu+1)_2).
TridiagonalSymmetric monic_w_jacobi(double nu, int order);

}  // namespace tra
