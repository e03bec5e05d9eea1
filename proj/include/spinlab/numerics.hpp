#pragma once

// Double-precision kernels: Gauss-Legendre quadrature, Legendre and
// Jacobi(0,1) polynomials and their largest zeros, symmetric tridiagonal and
// dense Hermitian eigensolvers, and the first zero of the Bessel function J0.
//
// Everything here is a pure function of its arguments.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace spinlab::numerics {

/// Symmetric tridiagonal matrix: diag has length l >= 1, offdiag length l-1.
struct Tridiag {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const { return diag.size(); }
  /// Throws ContractViolation unless the shape and finiteness invariants hold.
  void validate() const;
  Eigen::MatrixXd dense() const;
};

/// Nodes in (-1,1), strictly increasing; weights positive and summing to 2.
struct Quadrature1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t order() const { return nodes.size(); }
};

Quadrature1D gauss_legendre(int order);

/// P_l(x) by the Bonnet recursion.
double legendre_eval(int l, double x);

/// Jacobi polynomial P_l^{(0,1)}(x) by its three-term recursion.
double jacobi01_eval(int l, double x);

/// General Jacobi polynomial P_n^{(a,b)}(x).
double jacobi_eval(int n, double a, double b, double x);

enum class PolyKind { legendre, jacobi01 };

double poly_eval(PolyKind kind, int l, double x);
double poly_derivative(PolyKind kind, int l, double x);

/// Greatest root in (-1,1) of P_l or P_l^{(0,1)}; l >= 1.
///
/// The root is bracketed by walking down from x = 1 in angle steps finer than
/// the zero spacing, then polished by Newton's method with a bisection
/// safeguard. Throws NumericalFailure if the iteration does not settle.
double largest_zero(PolyKind kind, int l);

struct TridiagEigenpair {
  double value = 0.0;
  std::vector<double> vector;
};

/// Largest eigenvalue by Sturm-sequence bisection and its eigenvector by
/// inverse iteration. The vector is normalized with its first nonzero entry
/// nonnegative.
///
/// Throws NumericalFailure when the two largest eigenvalues are closer than
/// `kDegeneracyGap`, since the eigenvector is then not determined.
TridiagEigenpair tridiag_max_eigenpair(const Tridiag& m);

inline constexpr double kDegeneracyGap = 1e-10;

/// Number of eigenvalues of m strictly less than x.
int sturm_count(const Tridiag& m, double x);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  Eigen::MatrixXcd vectors;    // column k belongs to values[k]
};

/// Full eigendecomposition by cyclic complex Jacobi rotations.
/// Throws ContractViolation if h is not square or not Hermitian within 1e-10.
HermitianEigen hermitian_eigensystem(const Eigen::MatrixXcd& h);

/// exp(i t h) for Hermitian h.
Eigen::MatrixXcd exp_i_hermitian(const Eigen::MatrixXcd& h, double t);

/// -sum p log2 p over a spectrum, with 0 log 0 = 0. Tiny negative
/// eigenvalues from roundoff are treated as zero.
double entropy_bits(std::span<const double> spectrum);

struct ScalarOptimum {
  double x;
  double value;
};

/// Golden-section search for a maximum of f on [lo, hi], stopping once the
/// bracket is narrower than tol. f is assumed unimodal on the interval.
ScalarOptimum golden_section_maximize(const std::function<double(double)>& f,
                                      double lo, double hi, double tol);

/// Bessel J0 and J1 by their power series; accurate for |x| <= 8.
double bessel_j0(double x);
double bessel_j1(double x);

/// First positive zero of J0, ~2.404825557695773.
double bessel_j0_first_zero();

}  // namespace spinlab::numerics
