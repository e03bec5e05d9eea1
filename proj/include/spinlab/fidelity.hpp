#pragma once

// Maximal fidelities for direction encoding in N spin-1/2 systems.
//
// For encodings restricted to spatial rotations the fidelity is the
// quadratic form F = 1/2 + 1/2 A^t M A over the coefficients A_S, with M the
// symmetric tridiagonal matrix from build_m. The optimum is (1 + x_l)/2 with
// x_l the top eigenvalue of M, which is also the largest zero of P_l (even
// N) or P_l^{(0,1)} (odd N). fidelity_quadrature evaluates the defining
// sphere integral directly and serves as an independent check of both.

#include <vector>

#include "spinlab/codes.hpp"
#include "spinlab/numerics.hpp"

namespace spinlab::fidelity {

/// M for N spins. Row 0 belongs to S = N/2, the last row to S = S_n.
numerics::Tridiag build_m(int nspins);

struct RotationOptimum {
  double fidelity;
  codes::MultiRepState code;
};

/// F = (1 + lambda_max)/2 with A the top eigenvector of M.
RotationOptimum max_fidelity_rotation(int nspins);

/// Same, for a caller-supplied M (used to check the verification suite
/// against corrupted matrices).
RotationOptimum rotation_optimum_from(const numerics::Tridiag& m, int nspins);

/// (1 + x_l)/2 with x_l the largest zero of the Legendre (even N) or
/// Jacobi(0,1) (odd N) polynomial of degree l.
double max_fidelity_polynomial(int nspins);

/// d/(d+1), the optimum over all encodings of a d-dimensional space.
double fidelity_optimal(int d);

/// fidelity_optimal(2^N) without forming 2^N.
double fidelity_optimal_qubits(int nspins);

/// (N+1)/(N+2), N parallel spins.
double fidelity_parallel(int nspins);

/// D * integral dn (1 + n.g)/2 |<A(n)|B>|^2 on the product grid, where B is
/// the decoder state attached to the guess direction g.
///
/// Requires theta_order >= N + 2 and phi_count >= N + 2 (N = 2 S_top).
double fidelity_quadrature(const codes::MultiRepState& code,
                           const codes::BlockKet& decoder,
                           const codes::Direction& guess, int theta_order,
                           int phi_count);

/// Decoder taken at z; grid sizes N + 2.
double fidelity_quadrature(const codes::MultiRepState& code,
                           const codes::BlockKet& decoder_at_z);

struct AsymptoticRow {
  int nspins;
  double fidelity;
  double scaled_deficit;  // N^2 (1 - F)
};

/// Rows N = 1..max_n from the polynomial route; max_n >= 10.
std::vector<AsymptoticRow> asymptotic_table(int max_n);

}  // namespace spinlab::fidelity
