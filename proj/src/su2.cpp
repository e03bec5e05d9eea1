#include "spinlab/su2.hpp"

#include <algorithm>
#include <cmath>

#include "spinlab/error.hpp"
#include "spinlab/numerics.hpp"

namespace spinlab::su2 {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

long double log_factorial(int n) { return std::lgamma(n + 1.0L); }

void check_projection(HalfInt spin, HalfInt m) {
  require(spin.twice() >= 0, "negative spin magnitude " + spin.str());
  require(std::abs(m.twice()) <= spin.twice() &&
              (spin.twice() - m.twice()) % 2 == 0,
          "projection " + m.str() + " invalid for spin " + spin.str());
}

Eigen::Matrix2cd pauli(char which) {
  Eigen::Matrix2cd s;
  switch (which) {
    case 'x': s << 0, 1, 1, 0; break;
    case 'y': s << 0, -kI, kI, 0; break;
    case 'z': s << 1, 0, 0, -1; break;
    default: s.setIdentity(); break;
  }
  return s;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

std::string HalfInt::str() const {
  if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

Direction Direction::from_cartesian(double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  require(r > 0.0, "Direction::from_cartesian: zero vector");
  const double theta = std::acos(std::clamp(z / r, -1.0, 1.0));
  double phi = std::atan2(y, x);
  if (phi < 0.0) phi += 2.0 * M_PI;
  return {theta, phi};
}

std::array<double, 3> Direction::cartesian() const {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

double Direction::dot(const Direction& other) const {
  const auto a = cartesian();
  const auto b = other.cartesian();
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

double wigner_small_d(HalfInt spin, HalfInt m, HalfInt mp, double theta) {
  check_projection(spin, m);
  check_projection(spin, mp);
  // d^j_{m m'}(b) = sum_s (-1)^{m-m'+s} sqrt((j+m)!(j-m)!(j+m')!(j-m')!)
  //   c^{2j+m'-m-2s} s^{m-m'+2s} / ((j+m'-s)! s! (m-m'+s)! (j-m-s)!)
  const int jpm = (spin.twice() + m.twice()) / 2;
  const int jmm = (spin.twice() - m.twice()) / 2;
  const int jpmp = (spin.twice() + mp.twice()) / 2;
  const int jmmp = (spin.twice() - mp.twice()) / 2;
  const int dm = (m.twice() - mp.twice()) / 2;

  const int s_lo = std::max(0, -dm);
  const int s_hi = std::min(jpmp, jmm);
  // Extended precision keeps the alternating sum accurate to ~1e-15 for the
  // spins used here.
  const long double c = std::cos(0.5L * theta);
  const long double s = std::sin(0.5L * theta);
  const long double log_norm = 0.5L * (log_factorial(jpm) + log_factorial(jmm) +
                                       log_factorial(jpmp) + log_factorial(jmmp));

  // Neumaier summation of the alternating series.
  long double sum = 0.0L, comp = 0.0L;
  for (int k = s_lo; k <= s_hi; ++k) {
    const long double log_mag = log_norm - log_factorial(jpmp - k) - log_factorial(k) -
                                log_factorial(dm + k) - log_factorial(jmm - k);
    const int pc = spin.twice() - dm - 2 * k;
    const int ps = dm + 2 * k;
    long double term = std::exp(log_mag) * std::pow(c, pc) * std::pow(s, ps);
    if ((dm + k) % 2 != 0) term = -term;
    const long double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  return static_cast<double>(sum + comp);
}

Eigen::MatrixXd wigner_small_d_matrix(HalfInt spin, double theta) {
  const int dim = spin.multiplicity();
  Eigen::MatrixXd d(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      d(i, j) = wigner_small_d(spin, HalfInt(spin.twice() - 2 * i),
                               HalfInt(spin.twice() - 2 * j), theta);
  return d;
}

Eigen::MatrixXcd wigner_rotation(HalfInt spin, double phi, double theta) {
  const int dim = spin.multiplicity();
  Eigen::MatrixXcd out = wigner_small_d_matrix(spin, theta).cast<cd>();
  for (int i = 0; i < dim; ++i) {
    const double m = spin.value() - i;
    out.row(i) *= std::polar(1.0, -m * phi);
  }
  return out;
}

SpinKet rotate_to(HalfInt spin, HalfInt m, const Direction& n) {
  check_projection(spin, m);
  const int dim = spin.multiplicity();
  SpinKet ket{spin, Eigen::VectorXcd(dim)};
  for (int i = 0; i < dim; ++i) {
    const HalfInt mi(spin.twice() - 2 * i);
    ket.amps(i) = std::polar(wigner_small_d(spin, mi, m, n.theta),
                             -mi.value() * n.phi);
  }
  return ket;
}

Eigen::MatrixXcd SpinOperators::along(const Direction& n) const {
  const auto v = n.cartesian();
  return v[0] * x + v[1] * y + v[2] * z;
}

SpinOperators spin_operators(HalfInt spin) {
  require(spin.twice() >= 0, "spin_operators: negative spin");
  const int dim = spin.multiplicity();
  const double j = spin.value();
  Eigen::MatrixXcd raise = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double m = j - i;
    sz(i, i) = m;
    // S+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and m+1 sits at index i-1.
    if (i > 0) raise(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  const Eigen::MatrixXcd lower = raise.adjoint();
  return {0.5 * (raise + lower), -0.5 * kI * (raise - lower), sz};
}

SpinOperators peres_generators() {
  const Eigen::Matrix2cd id = pauli('i');
  const Eigen::Matrix2cd sx = pauli('x'), sy = pauli('y'), sz = pauli('z');
  const double r3 = std::sqrt(3.0) / 2.0;
  Eigen::Matrix4cd gx = r3 * kron(id, sx) + 0.5 * (kron(sx, sx) + kron(sy, sy));
  Eigen::Matrix4cd gy = r3 * kron(id, sy) + 0.5 * (kron(sy, sx) - kron(sx, sy));
  Eigen::Matrix4cd gz = 0.5 * kron(id, sz) + kron(sz, id);
  return {gx, gy, gz};
}

double entanglement_entropy(const Eigen::Vector4cd& state) {
  require(std::abs(state.norm() - 1.0) < 1e-10,
          "entanglement_entropy: state not normalized");
  Eigen::Matrix2cd amp;
  amp << state(0), state(1), state(2), state(3);
  const Eigen::MatrixXcd reduced = amp * amp.adjoint();
  const auto eig = numerics::hermitian_eigensystem(reduced);
  return numerics::entropy_bits(eig.values);
}

double overlap_sq_32(double c, Projection32 sn) {
  require(std::abs(c) <= 1.0, "overlap_sq_32: |n.m| must not exceed 1");
  if (sn == Projection32::three_halves) {
    const double u = 0.5 * (1.0 + c);
    return u * u * u;
  }
  const double t = 1.0 - 3.0 * c;
  return (1.0 + c) * t * t / 8.0;
}

}  // namespace spinlab::su2
