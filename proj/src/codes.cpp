#include "spinlab/codes.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "spinlab/error.hpp"

namespace spinlab::codes {

namespace {

BlockKet assemble(const CodeSpace& space, const Eigen::VectorXcd& weights,
                  const Direction& n) {
  BlockKet out = BlockKet::Zero(space.dim());
  for (int b = 0; b < space.length(); ++b) {
    if (weights(b) == 0.0) continue;
    const auto ket = su2::rotate_to(space.irreps()[b], space.sn(), n);
    out.segment(space.offset(b), ket.amps.size()) = weights(b) * ket.amps;
  }
  return out;
}

}  // namespace

CodeSpace::CodeSpace(int nspins, HalfInt sn) : nspins_(nspins), sn_(sn) {
  require(nspins >= 1, "CodeSpace: need at least one spin");
  require(sn.twice() >= 0 && sn.twice() <= nspins && (nspins - sn.twice()) % 2 == 0,
          "CodeSpace: S_n=" + sn.str() + " incompatible with N=" +
              std::to_string(nspins));
  for (int twice = nspins; twice >= sn.twice(); twice -= 2) {
    irreps_.emplace_back(twice);
    offsets_.push_back(dim_);
    dim_ += twice + 1;
  }
}

CodeSpace CodeSpace::rotation(int nspins) {
  return CodeSpace(nspins, HalfInt(nspins % 2));
}

CodeSpace CodeSpace::coherent(int d) {
  require(d >= 2, "CodeSpace::coherent: dimension must be >= 2");
  return CodeSpace(d - 1, HalfInt(d - 1));
}

MultiRepState::MultiRepState(CodeSpace s, Eigen::VectorXcd a)
    : space(std::move(s)), coeffs(std::move(a)) {
  require(coeffs.size() == space.length(),
          "MultiRepState: expected " + std::to_string(space.length()) +
              " coefficients");
  require(std::abs(coeffs.squaredNorm() - 1.0) <= 1e-12,
          "MultiRepState: coefficients not normalized");
}

MultiRepState MultiRepState::coherent(int d) {
  return MultiRepState(CodeSpace::coherent(d), Eigen::VectorXcd::Ones(1));
}

MultiRepState AlphaFamily::code() const {
  require(alpha >= 0.0 && alpha <= 0.5 * std::numbers::pi + 1e-15,
          "AlphaFamily: alpha must lie in [0, pi/2]");
  Eigen::VectorXcd a(2);
  a << std::cos(alpha), std::polar(std::sin(alpha), beta);
  return MultiRepState(CodeSpace(2, HalfInt(0)), a);
}

BlockKet code_state(const MultiRepState& a, const Direction& n) {
  return assemble(a.space, a.coeffs, n);
}

BlockKet alpha_state(const AlphaFamily& f, const Direction& n) {
  return code_state(f.code(), n);
}

BlockKet decoder_state(const CodeSpace& space, const Direction& m) {
  Eigen::VectorXcd b(space.length());
  for (int k = 0; k < space.length(); ++k)
    b(k) = std::sqrt(static_cast<double>(space.irreps()[k].multiplicity()) /
                     space.dim());
  return assemble(space, b, m);
}

BlockKet matched_decoder_state(const MultiRepState& code, const Direction& m) {
  const CodeSpace& space = code.space;
  Eigen::VectorXcd b(space.length());
  for (int k = 0; k < space.length(); ++k) {
    const double mag = std::sqrt(
        static_cast<double>(space.irreps()[k].multiplicity()) / space.dim());
    const auto a = code.coeffs(k);
    b(k) = std::abs(a) > 0.0 ? mag * a / std::abs(a) : std::complex<double>(mag);
  }
  return assemble(space, b, m);
}

SphereGrid::SphereGrid(const numerics::Quadrature1D& cos_theta, int phi_count) {
  require(phi_count >= 1, "SphereGrid: phi_count must be positive");
  points.reserve(cos_theta.order() * static_cast<std::size_t>(phi_count));
  for (std::size_t i = 0; i < cos_theta.order(); ++i) {
    const double theta = std::acos(cos_theta.nodes[i]);
    const double w = 0.5 * cos_theta.weights[i] / phi_count;
    for (int j = 0; j < phi_count; ++j)
      points.push_back({{theta, 2.0 * std::numbers::pi * j / phi_count}, w});
  }
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : entries(std::move(rho)) {
  require(entries.rows() == entries.cols() && entries.rows() > 0,
          "DensityMatrix: must be square and non-empty");
  require((entries - entries.adjoint()).cwiseAbs().maxCoeff() <= 1e-10,
          "DensityMatrix: not Hermitian");
  require(std::abs(entries.trace() - 1.0) <= 1e-10,
          "DensityMatrix: trace differs from 1");
  const auto eig = numerics::hermitian_eigensystem(entries);
  require(eig.values.front() >= -1e-10, "DensityMatrix: negative eigenvalue");
}

DensityMatrix source_density(const MultiRepState& a,
                             const numerics::Quadrature1D& quad, int phi_count) {
  const CodeSpace& space = a.space;
  require(static_cast<int>(quad.order()) >= space.nspins() + 2,
          "source_density: quadrature order must be >= N+2");
  require(phi_count >= space.nspins() + 1,
          "source_density: phi_count must be >= 2 S_top + 1");
  const SphereGrid grid(quad, phi_count);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
  for (const auto& p : grid.points) {
    const BlockKet ket = code_state(a, p.dir);
    rho.noalias() += p.weight * ket * ket.adjoint();
  }
  return DensityMatrix(rho);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto eig = numerics::hermitian_eigensystem(rho.entries);
  return numerics::entropy_bits(eig.values);
}

}  // namespace spinlab::codes
