#pragma once

#include <array>
#include <span>
#include <vector>

#include "ccbc/numerics.hpp"
#include "ccbc/problem.hpp"

namespace ccbc {

/// U_n(q) = sum_{i<j} m^2 / R_ij. Throws CollisionError when some R_ij < 1e-12.
double potential(const Problem& p, const Configuration& q);

/// Block i = sum_{j != i} m^2 (q_j - q_i) / R_ij^3.
std::vector<double> gradient(const Problem& p, const Configuration& q);

/// For equal masses, the plain coordinate mean.
std::array<double, 2> center_of_mass(const Problem& p, const Configuration& q);

/// I_S(q) = sum m (q_i - c)^T S (q_i - c).
double moment_of_inertia(const Problem& p, const Configuration& q);

struct DerivedScalars {
  double potential;
  double lambda;  ///< potential / inertia
  double inertia;
  std::array<double, 2> center;
};

DerivedScalars derived_scalars(const Problem& p, const Configuration& q);

/// Translate to the center of mass and scale to unit S-weighted inertia.
/// Throws DomainError when every body sits at the center.
Configuration normalize(const Problem& p, const Configuration& q);

/// Balanced-configuration residual system; zeros are normalized BC(S).
std::vector<double> residuals(const Problem& p, const Configuration& q);

/// Analytic Jacobian of residuals(), 2n x 2n.
Matrix residual_jacobian(const Problem& p, const Configuration& q);

/// H = D^2 U(q) + U(q) S_hat M, the Hessian of the potential restricted to
/// the normalized configuration space (meaningful at critical points).
SymMatrix hessian(const Problem& p, const Configuration& q);

/// Body of largest distance from the origin; radii within a relative 1e-12
/// count as ties, resolved by the lowest index.
int max_radius_body(std::span<const double> coords);

/// Sorted mutual distances R_ij, i < j (ascending).
std::vector<double> mutual_distances(const Configuration& q);

}  // namespace ccbc
