#pragma once

// SU(2) representation kernels: half-integer spins, directions, Wigner
// rotation matrices, spin operators and directional spin states.
//
// Conventions shared by every module:
//   * kets of irrep S are stored in the S_z basis ordered by descending m,
//     so index i holds m = S - i;
//   * |S,m n> = exp(-i phi S_z) exp(-i theta S_y) |S,m z>  (active rotation,
//     Euler angles (phi, theta, 0)).

#include <array>
#include <compare>
#include <complex>
#include <string>

#include <Eigen/Dense>

namespace spinlab::su2 {

/// Exact half-integer, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int twice) : twice_(twice) {}

  static constexpr HalfInt integer(int v) { return HalfInt(2 * v); }
  static constexpr HalfInt half(int odd_numerator) { return HalfInt(odd_numerator); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  /// 2S+1 for a spin magnitude.
  constexpr int multiplicity() const { return twice_ + 1; }

  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string str() const;

 private:
  int twice_ = 0;
};

/// Unit vector on the sphere in polar angles (radians).
struct Direction {
  double theta = 0.0;
  double phi = 0.0;

  static Direction from_cartesian(double x, double y, double z);
  static Direction z_axis() { return {0.0, 0.0}; }

  std::array<double, 3> cartesian() const;
  double dot(const Direction& other) const;
};

struct SpinKet {
  HalfInt spin;
  Eigen::VectorXcd amps;
};

/// Index of projection m inside a descending-m ket of spin S.
inline int basis_index(HalfInt spin, HalfInt m) { return (spin.twice() - m.twice()) / 2; }

/// d^S_{m,mp}(theta) = <S m| exp(-i theta S_y) |S mp>.
///
/// Evaluated from the factorial sum with log-factorials and compensated
/// summation. Intended for S <= 50.
double wigner_small_d(HalfInt spin, HalfInt m, HalfInt mp, double theta);

/// Full d^S(theta), rows and columns in descending-m order.
Eigen::MatrixXd wigner_small_d_matrix(HalfInt spin, double theta);

/// D^S(phi, theta, 0) = exp(-i phi S_z) exp(-i theta S_y).
Eigen::MatrixXcd wigner_rotation(HalfInt spin, double phi, double theta);

/// |S,m n>, the S_z eigenstate with projection m rotated to point along n.
SpinKet rotate_to(HalfInt spin, HalfInt m, const Direction& n);

struct SpinOperators {
  Eigen::MatrixXcd x;
  Eigen::MatrixXcd y;
  Eigen::MatrixXcd z;

  /// n_x S_x + n_y S_y + n_z S_z.
  Eigen::MatrixXcd along(const Direction& n) const;
  Eigen::MatrixXcd casimir() const { return x * x + y * y + z * z; }
};

/// Standard spin matrices of irrep S built from the ladder operators.
SpinOperators spin_operators(HalfInt spin);

/// Non-local two-qubit operators that realize spin 3/2 on C^2 (x) C^2.
/// Basis order |uu>, |ud>, |du>, |dd> with sigma_z = diag(1,-1).
SpinOperators peres_generators();

/// Entropy (bits) of the reduced state of the first qubit of a normalized
/// two-qubit state.
double entanglement_entropy(const Eigen::Vector4cd& state);

enum class Projection32 { three_halves, one_half };

/// |<3/2,sn n|3/2,sn m>|^2 as a function of c = n.m.
double overlap_sq_32(double c, Projection32 sn);

}  // namespace spinlab::su2
