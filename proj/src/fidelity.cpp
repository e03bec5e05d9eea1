#include "spinlab/fidelity.hpp"

#include <cmath>

#include "spinlab/error.hpp"

namespace spinlab::fidelity {

using numerics::Tridiag;

Tridiag build_m(int nspins) {
  require(nspins >= 1, "build_m: N must be >= 1");
  const bool even = nspins % 2 == 0;
  const int l = codes::CodeSpace::rotation(nspins).length();
  auto d = [even](int k) { return even ? 0.0 : 1.0 / (4.0 * k * k - 1.0); };
  auto c = [even](int k) {
    return even ? k / std::sqrt(4.0 * k * k - 1.0)
                : std::sqrt(k * (k + 1.0)) / (2.0 * k + 1.0);
  };
  Tridiag m;
  for (int r = 0; r < l; ++r) m.diag.push_back(d(l - r));
  for (int r = 0; r + 1 < l; ++r) m.offdiag.push_back(c(l - r - 1));
  return m;
}

RotationOptimum rotation_optimum_from(const Tridiag& m, int nspins) {
  const auto space = codes::CodeSpace::rotation(nspins);
  require(static_cast<int>(m.size()) == space.length(),
          "rotation_optimum_from: M has the wrong size for N=" +
              std::to_string(nspins));
  const auto top = numerics::tridiag_max_eigenpair(m);
  Eigen::VectorXcd a(space.length());
  for (int k = 0; k < space.length(); ++k) a(k) = top.vector[k];
  a.normalize();
  return {0.5 * (1.0 + top.value), codes::MultiRepState(space, a)};
}

RotationOptimum max_fidelity_rotation(int nspins) {
  return rotation_optimum_from(build_m(nspins), nspins);
}

double max_fidelity_polynomial(int nspins) {
  require(nspins >= 1, "max_fidelity_polynomial: N must be >= 1");
  const int l = codes::CodeSpace::rotation(nspins).length();
  const auto kind = nspins % 2 == 0 ? numerics::PolyKind::legendre
                                    : numerics::PolyKind::jacobi01;
  return 0.5 * (1.0 + numerics::largest_zero(kind, l));
}

double fidelity_optimal(int d) {
  require(d >= 2, "fidelity_optimal: d must be >= 2");
  return static_cast<double>(d) / (d + 1.0);
}

double fidelity_optimal_qubits(int nspins) {
  require(nspins >= 1, "fidelity_optimal_qubits: N must be >= 1");
  return 1.0 / (1.0 + std::ldexp(1.0, -nspins));
}

double fidelity_parallel(int nspins) {
  require(nspins >= 1, "fidelity_parallel: N must be >= 1");
  return (nspins + 1.0) / (nspins + 2.0);
}

double fidelity_quadrature(const codes::MultiRepState& code,
                           const codes::BlockKet& decoder,
                           const codes::Direction& guess, int theta_order,
                           int phi_count) {
  const auto& space = code.space;
  require(decoder.size() == space.dim(),
          "fidelity_quadrature: decoder lives in a different space");
  require(theta_order >= space.nspins() + 2,
          "fidelity_quadrature: theta order must be >= N+2");
  require(phi_count >= space.nspins() + 2,
          "fidelity_quadrature: phi count must be >= N+2");
  const codes::SphereGrid grid(theta_order, phi_count);
  double sum = 0.0;
  for (const auto& p : grid.points) {
    const double overlap = std::norm(codes::code_state(code, p.dir).dot(decoder));
    sum += p.weight * 0.5 * (1.0 + p.dir.dot(guess)) * overlap;
  }
  return space.dim() * sum;
}

double fidelity_quadrature(const codes::MultiRepState& code,
                           const codes::BlockKet& decoder_at_z) {
  const int n = code.space.nspins() + 2;
  return fidelity_quadrature(code, decoder_at_z, codes::Direction::z_axis(), n, n);
}

std::vector<AsymptoticRow> asymptotic_table(int max_n) {
  require(max_n >= 10, "asymptotic_table: max_n must be >= 10");
  std::vector<AsymptoticRow> rows;
  rows.reserve(max_n);
  for (int n = 1; n <= max_n; ++n) {
    const double f = max_fidelity_polynomial(n);
    rows.push_back({n, f, static_cast<double>(n) * n * (1.0 - f)});
  }
  return rows;
}

}  // namespace spinlab::fidelity
