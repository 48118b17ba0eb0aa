#pragma once

// Angular eigenproblem of a point dipole: the symmetric tridiagonal matrix
// whose eigenvalues are (chi + 1/2)^2, and the critical dipole moment.

#include <vector>

namespace tra {

struct TridiagonalSymmetric {
  std::vector<double> diag;
  std::vector<double> offdiag;  // offdiag[i] couples rows i and i+1

  std::size_t size() const { return diag.size(); }
  double norm_bound() const;  // Gershgorin bound on the spectral radius
};

/// diag[i] = (i+m+1/2)^2, offdiag[i] = -d sqrt((i+1)(i+2m+1)/((i+m+1)^2 - 1/4)).
TridiagonalSymmetric build_T(double d, int m, int size);

/// All eigenvalues, ascending, by Sturm-sequence bisection.
std::vector<double> eigen_tridiag(const TridiagonalSymmetric& t);

/// The k-th smallest eigenvalue (k from 0).
double eigenvalue(const TridiagonalSymmetric& t, int k);

struct DipoleSpectrum {
  int m = 0;
  double d = 0.0;
  int size = 0;
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> chi;          // sqrt(lambda) - 1/2; NaN where lambda < 0
  std::vector<bool> supercritical;  // lambda <= 0
};

/// Throws Supercritical when no eigenvalue is positive.
DipoleSpectrum chi_values(double d, int m, int size);

struct ConvergedChi {
  double chi = 0.0;
  double eigenvalue = 0.0;
  int size = 0;      // truncation that met the tolerance
  double change = 0.0;  // |lambda(size) - lambda(size/2)|
};

/// chi of eigenbranch `branch`, doubling the truncation from `size` until the
/// eigenvalue moves by less than `tol`.
ConvergedChi converged_chi(double d, int m, int branch = 0, int size = 120,
                           double tol = 1e-10);

struct CriticalDipole {
  double d_max = 0.0;
  int size = 0;
};

/// Smallest d at which the lowest eigenvalue of build_T(d, m, size) reaches 0.
/// Throws NotFound when it stays positive for every d <= 100.
CriticalDipole critical_dipole(int m, int size, double tol);

}  // namespace tra
