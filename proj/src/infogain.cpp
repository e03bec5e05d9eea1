#include "spinlab/infogain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "spinlab/error.hpp"
#include "spinlab/numerics.hpp"

namespace spinlab::infogain {

namespace {

const double kLog2E = std::numbers::log2e;

class Integrand {
 public:
  Integrand(const codes::MultiRepState& code, const codes::BlockKet& decoder)
      : code_(code), decoder_(decoder), phi_count_(code.space.nspins() + 2) {
    require(decoder.size() == code.space.dim(),
            "info_gain_quadrature: decoder lives in a different space");
  }

  // g at one direction.
  double at(double x, double phi) const {
    const codes::Direction n{std::acos(std::clamp(x, -1.0, 1.0)), phi};
    return code_.space.dim() * std::norm(codes::code_state(code_, n).dot(decoder_));
  }

  // Azimuthal averages of g and of g log2 g - (g - 1) log2 e at fixed
  // cos(theta). The second term integrates to zero but makes the integrand
  // pointwise nonnegative, so roundoff cannot push a zero gain below zero.
  std::pair<double, double> ring(double x) const {
    double g_sum = 0.0, h_sum = 0.0;
    for (int j = 0; j < phi_count_; ++j) {
      const double g = at(x, 2.0 * std::numbers::pi * j / phi_count_);
      g_sum += g;
      const double h = g > 0.0 ? g * std::log(g) - (g - 1.0) : 1.0;
      h_sum += std::max(0.0, h) * kLog2E;
    }
    return {g_sum / phi_count_, h_sum / phi_count_};
  }

 private:
  const codes::MultiRepState& code_;
  const codes::BlockKet& decoder_;
  int phi_count_;
};

// Interior points of [-1,1] where g has a (near) zero on the phi = 0 meridian.
std::vector<double> split_points(const Integrand& f) {
  constexpr int kSamples = 512;
  std::vector<double> xs(kSamples + 1), gs(kSamples + 1);
  double g_max = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    xs[i] = -1.0 + 2.0 * i / kSamples;
    gs[i] = f.at(xs[i], 0.0);
    g_max = std::max(g_max, gs[i]);
  }
  std::vector<double> splits;
  for (int i = 1; i < kSamples; ++i) {
    if (!(gs[i] <= gs[i - 1] && gs[i] <= gs[i + 1])) continue;
    const auto best = numerics::golden_section_maximize(
        [&](double x) { return -f.at(x, 0.0); }, xs[i - 1], xs[i + 1], 1e-14);
    if (-best.value <= 1e-10 * g_max) splits.push_back(best.x);
  }
  return splits;
}

struct Integrals {
  double norm;
  double gain;
};

Integrals integrate(const Integrand& f, const std::vector<double>& edges, int order) {
  const auto q = numerics::gauss_legendre(order);
  Integrals out{0.0, 0.0};
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    const double mid = 0.5 * (edges[p + 1] + edges[p]);
    for (std::size_t i = 0; i < q.order(); ++i) {
      const auto [g, h] = f.ring(mid + half * q.nodes[i]);
      // Normalized sphere measure: dn = d(cos theta)/2 * dphi/(2 pi).
      out.norm += 0.5 * half * q.weights[i] * g;
      out.gain += 0.5 * half * q.weights[i] * h;
    }
  }
  return out;
}

}  // namespace

double info_gain_closed(int nspins) {
  require(nspins >= 1, "info_gain_closed: N must be >= 1");
  return nspins - (1.0 - std::ldexp(1.0, -nspins)) * kLog2E;
}

double info_gain_closed_dim(int d) {
  require(d >= 2, "info_gain_closed_dim: d must be >= 2");
  return std::log2(static_cast<double>(d)) - (1.0 - 1.0 / d) * kLog2E;
}

double info_gain_quadrature(const codes::MultiRepState& code,
                            const codes::BlockKet& decoder_at_z) {
  const Integrand f(code, decoder_at_z);
  std::vector<double> edges{-1.0};
  for (double x : split_points(f)) edges.push_back(x);
  edges.push_back(1.0);

  for (int order = 64; order <= 1024; order *= 2) {
    const Integrals coarse = integrate(f, edges, order);
    const Integrals fine = integrate(f, edges, order + order / 2);
    if (std::abs(fine.norm - 1.0) > 1e-8) {
      throw NumericalFailure(
          "info_gain_quadrature: integral of D|<A|B>|^2 is " +
          std::to_string(fine.norm) + ", expected 1");
    }
    if (std::abs(fine.gain - coarse.gain) <= 1e-8) return fine.gain;
  }
  throw NumericalFailure("info_gain_quadrature: quadrature did not settle");
}

double alpha_family_gain(double alpha, double beta) {
  const auto code = codes::AlphaFamily{alpha, beta}.code();
  return info_gain_quadrature(
      code, codes::matched_decoder_state(code, codes::Direction::z_axis()));
}

AlphaOptimum maximize_alpha(double tol, double beta) {
  require(tol > 0.0 && tol <= 1e-4, "maximize_alpha: tol must be in (0, 1e-4]");
  constexpr int kScan = 64;
  const double hi = 0.5 * std::numbers::pi;
  std::vector<double> gains(kScan);
  for (int i = 0; i < kScan; ++i) gains[i] = alpha_family_gain(hi * i / (kScan - 1), beta);
  const auto best = std::max_element(gains.begin(), gains.end()) - gains.begin();
  if (best == 0 || best == kScan - 1)
    throw NumericalFailure("maximize_alpha: maximum is not interior to [0, pi/2]");
  const auto opt = numerics::golden_section_maximize(
      [beta](double a) { return alpha_family_gain(a, beta); },
      hi * (best - 1) / (kScan - 1), hi * (best + 1) / (kScan - 1), tol);
  return {opt.x, opt.value};
}

}  // namespace spinlab::infogain
