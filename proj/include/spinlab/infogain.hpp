#pragma once

// Average information gain of a continuous decoding measurement,
//   I = integral dn  g(n) log2 g(n),   g(n) = D |<A(n)|B(z)>|^2,
// its closed form for the optimal d-dimensional encoding, and the search over
// the two-qubit alpha family for the gain-maximizing mixing angle.

#include "spinlab/codes.hpp"

namespace spinlab::infogain {

/// N - (1 - 2^-N) log2 e.
double info_gain_closed(int nspins);

/// log2 d - (1 - 1/d) log2 e.
double info_gain_closed_dim(int d);

/// Sphere integral of g log2 g with 0 log 0 = 0.
///
/// g vanishes quadratically at isolated polar angles for some codes, so the
/// cos(theta) range is split at those points and each piece gets its own
/// Gauss-Legendre rule. Orders 64 and 96 must agree within 1e-8; otherwise
/// both are doubled, up to 1024. Throws NumericalFailure if the normalization
/// integral of g differs from 1 by more than 1e-8 or the orders never agree.
double info_gain_quadrature(const codes::MultiRepState& code,
                            const codes::BlockKet& decoder_at_z);

struct AlphaOptimum {
  double alpha;
  double gain;
};

/// Gain of the alpha family with its phase-matched decoder.
double alpha_family_gain(double alpha, double beta = 0.0);

/// Maximizes alpha_family_gain over alpha in [0, pi/2]: a 64-point scan
/// brackets the maximum, then golden-section search narrows it to tol.
/// Requires tol <= 1e-4. Throws NumericalFailure if the best scan point is
/// on the boundary.
AlphaOptimum maximize_alpha(double tol, double beta = 0.0);

}  // namespace spinlab::infogain
