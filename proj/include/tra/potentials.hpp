#pragma once

// Physical models in atomic units (hbar = M = 1), their validation, the map
// from energy to basis order and spectral variable, and a finite-difference
// check of the radial equation -psi''/2 + V psi = E psi.

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tra/specfun.hpp"

namespace tra {

struct Kratzer {
  double xi = 0.0;      // Coulomb strength, V = xi/r + Lambda/r^2
  double Lambda = 0.0;  // > -1/8
};

struct InverseCube {
  double Lambda = 0.0;  // > -1/8
  double zeta = 0.0;    // V = Lambda/r^2 + zeta/r^3
};

struct InverseQuartic {
  double Lambda = 0.0;
  double zeta = 0.0;          // > 0, V = Lambda/r^2 + zeta/r^4
  std::optional<double> nu;   // basis order; sqrt(2 Lambda + 1/4) when absent
};

struct Exponential1D {
  double lambda = 1.0;  // > 0, V = -(lambda^2/2) e^{2 lambda r}
  double nu = 1.0;      // > 0
  Parity parity = Parity::Odd;
};

struct DipoleQuadrupole {
  double d = 0.0;    // dipole moment >= 0
  double q = 0.0;    // quadrupole moment
  double eta = 0.5;  // in [-1/2, 1]
  int m = 0;         // >= 0
  int branch = 0;    // eigenbranch of the angular problem, 0 = lowest
  int size = 120;    // initial angular truncation
  double chi = std::numeric_limits<double>::quiet_NaN();  // filled by resolve()

  double p() const { return eta * q; }
};

using PotentialModel =
    std::variant<Kratzer, InverseCube, InverseQuartic, Exponential1D, DipoleQuadrupole>;

std::string model_name(const PotentialModel& model);

/// Throws Domain (or InvalidArgument) naming the offending parameter.
void validate(const PotentialModel& model);

/// Validated copy with derived quantities filled in (chi for the dipole model).
PotentialModel resolve(const PotentialModel& model);

bool is_scattering_model(const PotentialModel& model);

/// V(r). Radial models need r > 0.
double effective_potential(const PotentialModel& model, double r);

struct SpectralMap {
  double k = 0.0;   // sqrt(2E)
  double nu = 0.0;  // basis order
  double z = 0.0;   // spectral variable; zeta k^2 for the inverse-quartic model
};

SpectralMap spectral_map(const PotentialModel& model, double E);

/// Scaled L-infinity residual of -psi''/2 + (V - E) psi on a uniform grid,
/// 5-point central differences, two points dropped at each end, divided by
/// |E| max|psi|. Throws Resolution when h^2 max|V| > 1.
double schrodinger_residual(const std::vector<double>& r, const std::vector<double>& psi,
                            double E, const PotentialModel& model);

}  // namespace tra
