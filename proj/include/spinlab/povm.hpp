#pragma once

// Finite POVMs on a code space, identity-resolution checks, exact fidelity of
// an encode/measure/guess protocol, and its Monte Carlo simulation.

#include <cstdint>
#include <vector>

#include "spinlab/codes.hpp"

namespace spinlab::povm {

using codes::BlockKet;
using codes::Direction;

struct PovmElement {
  double weight;
  BlockKet state;
  Direction guess;
};

struct FinitePovm {
  codes::CodeSpace space;
  std::vector<PovmElement> elements;

  double total_weight() const;
};

/// Continuous decoder POVM D * integral dm |B(m)><B(m)| discretized on the
/// product grid. Exact (up to roundoff) when theta_order >= N+2 and
/// phi_count >= N+2. The overload taking a code uses the phase-matched
/// decoder of that code.
FinitePovm quadrature_povm(const codes::CodeSpace& space, int theta_order,
                           int phi_count);
FinitePovm quadrature_povm(const codes::MultiRepState& code, int theta_order,
                           int phi_count);

/// The von Neumann pair {|m>, |-m>} on a single spin 1/2, unit weights.
FinitePovm von_neumann_pair(const Direction& m);

/// Six spin-3/2 coherent projectors along +-x, +-y, +-z, weight 2/3 each.
FinitePovm octahedron_povm();

/// Operator norm of sum_i w_i |s_i><s_i| - I.
double check_identity(const FinitePovm& p);

/// Outcome probabilities w_i |<A(n)|s_i>|^2 for a fixed direction.
std::vector<double> outcome_probabilities(const codes::MultiRepState& code,
                                          const FinitePovm& p,
                                          const Direction& n);

/// sum_i w_i integral dn |<A(n)|s_i>|^2 (1 + n.g_i)/2 on the product grid.
/// Requires check_identity(p) < 1e-10.
double povm_fidelity_exact(const codes::MultiRepState& code, const FinitePovm& p,
                           int theta_order, int phi_count);

struct SimulationResult {
  double mean;
  double std_error;
  std::uint64_t shots;
};

/// Monte Carlo estimate of the protocol fidelity.
///
/// Shots are split into a fixed number of shards. Shard k draws from
/// std::mt19937_64 seeded with std::seed_seq{seed_lo, seed_hi, k}, and shard
/// statistics are merged in shard order, so the result depends only on
/// (code, p, shots, seed) and not on the number of worker threads.
SimulationResult simulate(const codes::MultiRepState& code, const FinitePovm& p,
                          std::uint64_t shots, std::uint64_t seed,
                          unsigned workers = 0);

inline constexpr unsigned kSimulationShards = 16;

}  // namespace spinlab::povm
