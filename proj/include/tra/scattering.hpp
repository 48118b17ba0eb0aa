#pragma once

// Wavefunction series psi(r) = C0 sqrt(kr) sum_n c_n J_{sigma(n)+nu}(kr),
// phase shift and normalization, the exact Coulomb function, exponential
// bound states and an ODE integrator used as an independent check.

#include <complex>
#include <optional>
#include <vector>

#include "tra/potentials.hpp"
#include "tra/recursion.hpp"

namespace tra {

struct PhaseShift {
  double S = 0.0;
  double C = 0.0;
  double delta = 0.0;  // in (-pi, pi]
  double C0 = 0.0;
};

/// Basis index sigma(n) = stride * n + offset.
struct BasisIndex {
  int stride = 1;
  int offset = 0;
};

/// S = sum sin((sigma(n)+nu+1/2) pi/2) w_n, C likewise with cos,
/// delta = atan2(-S, C), C0 = sqrt((pi/2)/(S^2+C^2)).
/// Throws UndefinedPhase when S = C = 0.
PhaseShift phase_shift(const std::vector<double>& weights, double nu, BasisIndex index = {});

enum class C0Source { PhaseSums, CoulombGamma };

struct ScatteringSolution {
  PotentialModel model;
  double E = 0.0;
  SpectralMap map;
  CoefficientSequence coefficients;
  std::vector<double> weights;   // c_n actually multiplying the Bessel functions
  BasisIndex index;
  int n_used = 0;                // number of terms summed
  double tail_estimate = 0.0;    // |c_{n_used} J(k r_max)|, first omitted term
  double S = 0.0, C = 0.0;
  double delta = 0.0;
  double C0 = 0.0;
  C0Source c0_source = C0Source::PhaseSums;
  bool long_range = false;       // S/C phase needs the logarithmic correction
  bool growing = false;          // coefficient family grows factorially
  bool plateau = false;          // optimal truncation at an interior minimum
  std::optional<int> plateau_index;
  bool truncation_warning = false;  // no plateau / no convergence before n_max
};

struct WavefunctionSamples {
  std::vector<double> r;
  std::vector<double> psi;
};

struct SolveResult {
  ScatteringSolution solution;
  WavefunctionSamples samples;
};

SolveResult solve(const PotentialModel& model, double E, const std::vector<double>& r_grid,
                  int n_max = 200);

/// Regular Coulomb wavefunction with sigma = Z/k (repulsive for Z > 0).
/// Throws AccuracyError if the imaginary residue exceeds 1e-9 relative.
double coulomb_exact(double Z, int ell, double E, double r);

/// sqrt(pi/2)/Gamma(1/2+nu) e^{-pi xi/2k} |Gamma(1/2+nu+i xi/k)|, nu = sqrt(2 Lambda + 1/4).
double coulomb_C0(double xi, double Lambda, double k);

/// cos(kr - (xi/k) ln(2kr) + delta).
double kratzer_asymptote(double xi, double k, double delta, double r);

struct BoundState {
  double lambda = 1.0;
  double order = 1.0;   // Bessel order 2n+nu+1 (odd) or 2n+nu (even)
  double energy = 0.0;  // -(lambda^2/2) order^2
  double operator()(double r) const;  // sqrt(2 order) J_order(e^{lambda r})
};

BoundState exponential_spectrum(double lambda, double nu, Parity parity, int n);

struct OdeOptions {
  double rtol = 1e-10;
  double r0 = 1e-3;          // start for the power-law case
  double wkb_exponent = 30;  // start for singular repulsive tails
};

/// Direct integration of the radial equation from the regular small-r
/// solution; normalization-free.
WavefunctionSamples ode_oracle(const PotentialModel& model, double E,
                               const std::vector<double>& r_grid, const OdeOptions& options = {});

/// Least-squares amplitude c minimizing |a - c b|, and the resulting
/// max|a - c b| / max|a|.
struct ShapeComparison {
  double amplitude = 0.0;
  double rel_linf = 0.0;
};

ShapeComparison compare_shapes(const std::vector<double>& a, const std::vector<double>& b);

/// Uniform grid with `count` points on [start, stop].
std::vector<double> linear_grid(double start, double stop, int count);
std::vector<double> log_grid(double start, double stop, int count);

}  // namespace tra
