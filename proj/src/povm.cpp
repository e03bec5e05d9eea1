#include "spinlab/povm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "spinlab/error.hpp"
#include "spinlab/numerics.hpp"

namespace spinlab::povm {

namespace {

FinitePovm grid_povm(const codes::CodeSpace& space, const Eigen::VectorXcd& phases,
                     int theta_order, int phi_count) {
  require(theta_order >= space.nspins() + 2,
          "quadrature_povm: theta order must be >= N+2");
  require(phi_count >= space.nspins() + 2,
          "quadrature_povm: phi count must be >= N+2");
  Eigen::VectorXcd b(space.length());
  for (int k = 0; k < space.length(); ++k)
    b(k) = phases(k) *
           std::sqrt(static_cast<double>(space.irreps()[k].multiplicity()) /
                     space.dim());

  FinitePovm out{space, {}};
  const codes::SphereGrid grid(theta_order, phi_count);
  for (const auto& pt : grid.points) {
    BlockKet ket = BlockKet::Zero(space.dim());
    for (int k = 0; k < space.length(); ++k) {
      const auto s = su2::rotate_to(space.irreps()[k], space.sn(), pt.dir);
      ket.segment(space.offset(k), s.amps.size()) = b(k) * s.amps;
    }
    out.elements.push_back({space.dim() * pt.weight, ket, pt.dir});
  }
  return out;
}

struct Moments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0) return;
    const double total = static_cast<double>(n + o.n);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.n) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }
};

Moments run_shard(const codes::MultiRepState& code, const FinitePovm& p,
                  std::uint64_t shots, std::uint64_t seed, unsigned shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), shard};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Moments acc;
  std::vector<double> cumulative(p.elements.size());
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double z = 2.0 * unit(rng) - 1.0;
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    const Direction n{std::acos(z), phi};
    const BlockKet a = codes::code_state(code, n);
    double total = 0.0;
    for (std::size_t i = 0; i < p.elements.size(); ++i) {
      total += p.elements[i].weight * std::norm(a.dot(p.elements[i].state));
      cumulative[i] = total;
    }
    if (std::abs(total - 1.0) > 1e-8) {
      throw NumericalFailure("simulate: outcome probabilities sum to " +
                             std::to_string(total));
    }
    const double u = unit(rng) * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t i =
        std::min<std::size_t>(it - cumulative.begin(), p.elements.size() - 1);
    acc.add(0.5 * (1.0 + n.dot(p.elements[i].guess)));
  }
  return acc;
}

}  // namespace

double FinitePovm::total_weight() const {
  double w = 0.0;
  for (const auto& e : elements) w += e.weight;
  return w;
}

FinitePovm quadrature_povm(const codes::CodeSpace& space, int theta_order,
                           int phi_count) {
  return grid_povm(space, Eigen::VectorXcd::Ones(space.length()), theta_order,
                   phi_count);
}

FinitePovm quadrature_povm(const codes::MultiRepState& code, int theta_order,
                           int phi_count) {
  Eigen::VectorXcd phases(code.space.length());
  for (int k = 0; k < code.space.length(); ++k) {
    const auto a = code.coeffs(k);
    phases(k) = std::abs(a) > 0.0 ? a / std::abs(a) : std::complex<double>(1.0);
  }
  return grid_povm(code.space, phases, theta_order, phi_count);
}

FinitePovm von_neumann_pair(const Direction& m) {
  const auto space = codes::CodeSpace::coherent(2);
  const Direction anti{std::numbers::pi - m.theta,
                       std::fmod(m.phi + std::numbers::pi, 2.0 * std::numbers::pi)};
  const su2::HalfInt half(1);
  return {space,
          {{1.0, su2::rotate_to(half, half, m).amps, m},
           {1.0, su2::rotate_to(half, half, anti).amps, anti}}};
}

FinitePovm octahedron_povm() {
  const auto space = codes::CodeSpace::coherent(4);
  const su2::HalfInt s(3);
  const double h = 0.5 * std::numbers::pi;
  const std::vector<Direction> vertices = {
      {h, 0.0}, {h, 2 * h}, {h, h}, {h, 3 * h}, {0.0, 0.0}, {2 * h, 0.0}};
  FinitePovm out{space, {}};
  for (const auto& v : vertices)
    out.elements.push_back({2.0 / 3.0, su2::rotate_to(s, s, v).amps, v});
  return out;
}

double check_identity(const FinitePovm& p) {
  const int dim = p.space.dim();
  Eigen::MatrixXcd sum = -Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& e : p.elements) {
    require(e.state.size() == dim, "check_identity: element has wrong dimension");
    sum.noalias() += e.weight * e.state * e.state.adjoint();
  }
  const auto eig = numerics::hermitian_eigensystem(sum);
  return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
}

std::vector<double> outcome_probabilities(const codes::MultiRepState& code,
                                          const FinitePovm& p,
                                          const Direction& n) {
  require(code.space == p.space, "outcome_probabilities: space mismatch");
  const BlockKet a = codes::code_state(code, n);
  std::vector<double> probs;
  probs.reserve(p.elements.size());
  for (const auto& e : p.elements) probs.push_back(e.weight * std::norm(a.dot(e.state)));
  return probs;
}

double povm_fidelity_exact(const codes::MultiRepState& code, const FinitePovm& p,
                           int theta_order, int phi_count) {
  require(code.space == p.space, "povm_fidelity_exact: space mismatch");
  require(check_identity(p) < 1e-10,
          "povm_fidelity_exact: POVM does not resolve the identity");
  const codes::SphereGrid grid(theta_order, phi_count);
  double sum = 0.0;
  for (const auto& pt : grid.points) {
    const BlockKet a = codes::code_state(code, pt.dir);
    double local = 0.0;
    for (const auto& e : p.elements)
      local += e.weight * std::norm(a.dot(e.state)) * 0.5 * (1.0 + pt.dir.dot(e.guess));
    sum += pt.weight * local;
  }
  return sum;
}

SimulationResult simulate(const codes::MultiRepState& code, const FinitePovm& p,
                          std::uint64_t shots, std::uint64_t seed,
                          unsigned workers) {
  require(shots >= 1, "simulate: shots must be >= 1");
  require(code.space == p.space, "simulate: space mismatch");
  require(check_identity(p) < 1e-10, "simulate: POVM does not resolve the identity");

  std::vector<Moments> shards(kSimulationShards);
  auto shard_shots = [&](unsigned k) {
    return shots / kSimulationShards + (k < shots % kSimulationShards ? 1 : 0);
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, kSimulationShards);
  if (workers == 1) {
    for (unsigned k = 0; k < kSimulationShards; ++k)
      shards[k] = run_shard(code, p, shard_shots(k), seed, k);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (unsigned k = w; k < kSimulationShards; k += workers)
            shards[k] = run_shard(code, p, shard_shots(k), seed, k);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  Moments total;
  for (const auto& s : shards) total.merge(s);
  const double var =
      total.n > 1 ? total.m2 / static_cast<double>(total.n - 1) : 0.0;
  return {total.mean, std::sqrt(var / static_cast<double>(total.n)), total.n};
}

}  // namespace spinlab::povm
