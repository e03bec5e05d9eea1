#pragma once

// Code spaces built from one copy of each irrep S = S_top, S_top-1, ..., S_n,
// direction-encoding states living in them, matching decoder states, and
// source density matrices.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "spinlab/numerics.hpp"
#include "spinlab/su2.hpp"

namespace spinlab::codes {

using su2::Direction;
using su2::HalfInt;

/// Amplitudes over a CodeSpace, one descending-m block per irrep.
using BlockKet = Eigen::VectorXcd;

/// The truncated direct sum (N/2) + (N/2 - 1) + ... + (S_n).
///
/// `nspins` is twice the top spin. For N physical qubits with a rotation
/// encoding S_n is 0 or 1/2; a single coherent irrep of dimension d is the
/// case nspins = d - 1, S_n = (d-1)/2.
class CodeSpace {
 public:
  CodeSpace(int nspins, HalfInt sn);

  /// Minimal S_n: 0 for even N, 1/2 for odd N.
  static CodeSpace rotation(int nspins);
  /// Single irrep of dimension d with S_n = S.
  static CodeSpace coherent(int d);

  int nspins() const { return nspins_; }
  HalfInt sn() const { return sn_; }
  HalfInt top() const { return HalfInt(nspins_); }
  /// Number of irreps l = N/2 + 1 - S_n.
  int length() const { return static_cast<int>(irreps_.size()); }
  /// Total dimension D = sum (2S+1).
  int dim() const { return dim_; }
  /// Irreps in descending order, S_top first.
  const std::vector<HalfInt>& irreps() const { return irreps_; }
  int offset(int block) const { return offsets_[block]; }

  bool operator==(const CodeSpace& o) const {
    return nspins_ == o.nspins_ && sn_ == o.sn_;
  }

 private:
  int nspins_;
  HalfInt sn_;
  std::vector<HalfInt> irreps_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

/// Coefficients A_S of |A(n)> = sum_S A_S |S, S_n n>, normalized.
struct MultiRepState {
  CodeSpace space;
  Eigen::VectorXcd coeffs;  // indexed like space.irreps()

  MultiRepState(CodeSpace s, Eigen::VectorXcd a);

  /// Parallel-spin / coherent state: all weight on the top irrep, S_n = S.
  static MultiRepState coherent(int d);
};

/// cos(alpha) |1,0 n> + sin(alpha) e^{i beta} |0,0> on two qubits.
struct AlphaFamily {
  double alpha = 0.0;
  double beta = 0.0;

  MultiRepState code() const;
};

BlockKet code_state(const MultiRepState& a, const Direction& n);

BlockKet alpha_state(const AlphaFamily& f, const Direction& n);

/// Decoder |B(m)> with real weights b_S = sqrt((2S+1)/D).
BlockKet decoder_state(const CodeSpace& space, const Direction& m);

/// Decoder whose block phases follow those of the code coefficients, i.e.
/// b_S A_S/|A_S| (phase 1 where A_S = 0). For the alpha family this is
/// sqrt(3)/2 |1,0 m> + e^{i beta}/2 |0,0>.
BlockKet matched_decoder_state(const MultiRepState& code, const Direction& m);

/// Product grid on the sphere: Gauss-Legendre in cos(theta) times the
/// uniform trapezoid rule in phi. Weights sum to 1 (normalized measure).
struct SphereGrid {
  struct Point {
    Direction dir;
    double weight;
  };
  std::vector<Point> points;

  SphereGrid(const numerics::Quadrature1D& cos_theta, int phi_count);
  SphereGrid(int theta_order, int phi_count)
      : SphereGrid(numerics::gauss_legendre(theta_order), phi_count) {}
};

struct DensityMatrix {
  Eigen::MatrixXcd entries;

  explicit DensityMatrix(Eigen::MatrixXcd rho);
  int dim() const { return static_cast<int>(entries.rows()); }
};

/// rho = integral dn |A(n)><A(n)| on the product grid.
///
/// Requires quadrature order >= N + 2 and phi_count >= 2 S_top + 1, which
/// makes the grid exact for these band-limited integrands.
DensityMatrix source_density(const MultiRepState& a,
                             const numerics::Quadrature1D& quad, int phi_count);

/// -tr rho log2 rho.
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace spinlab::codes
