#include "spinlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spinlab/error.hpp"

namespace spinlab::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Index j (ascending, 0-based) eigenvalue by bisection on the Sturm count.
double bisect_eigenvalue(const Tridiag& m, int j, double lo, double hi) {
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(m, mid) > j) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Solves (m - shift I) x = b in place with partially pivoted elimination.
void solve_shifted(const Tridiag& m, double shift, std::vector<double>& b) {
  const std::size_t n = m.size();
  std::vector<double> d(n), dl(m.offdiag), du(m.offdiag), du2(n, 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = m.diag[i] - shift;
    scale = std::max(scale, std::abs(d[i]));
  }
  for (double c : m.offdiag) scale = std::max(scale, std::abs(c));
  const double tiny = kEps * std::max(scale, 1.0);
  auto guard = [tiny](double& p) {
    if (std::abs(p) < tiny) p = std::copysign(tiny, p == 0.0 ? 1.0 : p);
  };

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      guard(d[i]);
      const double fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      b[i + 1] -= fact * b[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      const double temp = d[i + 1];
      d[i + 1] = du[i] - fact * temp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du2[i];
      }
      du[i] = temp;
      const double bi = b[i];
      b[i] = b[i + 1];
      b[i + 1] = bi - fact * b[i + 1];
    }
  }
  guard(d[n - 1]);

  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t k = n; k-- > 2;) {
    const std::size_t i = k - 2;
    b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  }
}

}  // namespace

void Tridiag::validate() const {
  require(!diag.empty(), "Tridiag: empty diagonal");
  require(offdiag.size() + 1 == diag.size(),
          "Tridiag: offdiag must have length l-1");
  for (double v : diag) require(std::isfinite(v), "Tridiag: non-finite entry");
  for (double v : offdiag)
    require(std::isfinite(v), "Tridiag: non-finite entry");
}

Eigen::MatrixXd Tridiag::dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out(i, i) = diag[i];
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    out(i, i + 1) = offdiag[i];
    out(i + 1, i) = offdiag[i];
  }
  return out;
}

Quadrature1D gauss_legendre(int order) {
  require(order >= 1, "gauss_legendre: order must be >= 1");
  const int n = order;
  Quadrature1D q;
  q.nodes.resize(n);
  q.weights.resize(n);
  // Roots are symmetric; compute the upper half and mirror.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pm = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) <= 4 * kEps) break;
    }
    if (n % 2 == 1 && i == n / 2) x = 0.0;
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[n - 1 - i] = x;
    q.nodes[i] = -x;
    q.weights[n - 1 - i] = w;
    q.weights[i] = w;
  }
  return q;
}

double legendre_eval(int l, double x) {
  require(l >= 0, "legendre_eval: negative degree");
  if (l == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= l; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double jacobi_eval(int n, double a, double b, double x) {
  require(n >= 0, "jacobi_eval: negative degree");
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double a1 = 2.0 * k * (k + a + b) * (s - 2.0);
    const double a2 = (s - 1.0) * (a * a - b * b);
    const double a3 = (s - 2.0) * (s - 1.0) * s;
    const double a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    const double p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double jacobi01_eval(int l, double x) { return jacobi_eval(l, 0.0, 1.0, x); }

double poly_eval(PolyKind kind, int l, double x) {
  return kind == PolyKind::legendre ? legendre_eval(l, x) : jacobi01_eval(l, x);
}

double poly_derivative(PolyKind kind, int l, double x) {
  if (l == 0) return 0.0;
  const double b = kind == PolyKind::legendre ? 0.0 : 1.0;
  return 0.5 * (l + b + 1.0) * jacobi_eval(l - 1, 1.0, b + 1.0, x);
}

double largest_zero(PolyKind kind, int l) {
  require(l >= 1, "largest_zero: degree must be >= 1");
  const double b = kind == PolyKind::legendre ? 0.0 : 1.0;
  auto p = [&](double x) { return poly_eval(kind, l, x); };

  // Both families are normalized to 1 at x = 1, so P > 0 above the largest
  // zero. Consecutive zeros are at least ~pi/(l+1) apart in angle.
  const double step = std::numbers::pi / (8.0 * (l + 1));
  double hi = 1.0;
  double lo = 1.0;
  bool bracketed = false;
  for (int k = 1; k * step <= std::numbers::pi + step; ++k) {
    const double x = std::cos(std::min(k * step, std::numbers::pi));
    const double v = p(x);
    if (v == 0.0) return x;
    if (v < 0.0) {
      lo = x;
      bracketed = true;
      break;
    }
    hi = x;
  }
  if (!bracketed)
    throw NumericalFailure("largest_zero: no sign change found for l=" +
                           std::to_string(l));

  // Classical estimate theta ~ j_{0,1} / (l + (b + 1)/2).
  double x = std::cos(2.404825557695773 / (l + 0.5 * (b + 1.0)));
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

  for (int it = 0; it < 200; ++it) {
    const double v = p(x);
    if (v == 0.0) return x;
    if (v > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double dv = poly_derivative(kind, l, x);
    double next = x - v / dv;
    if (!(next > lo && next < hi) || !std::isfinite(next))
      next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 2.0 * kEps * std::abs(x) || hi - lo <= kEps) {
      // Settle on the representable neighbour with the smallest residual.
      double best = next, best_r = std::abs(p(next));
      for (double dir : {-1.0, 1.0}) {
        double y = next;
        for (int k = 0; k < 4; ++k) {
          y = std::nextafter(y, dir * 2.0);
          const double r = std::abs(p(y));
          if (r < best_r) {
            best = y;
            best_r = r;
          }
        }
      }
      return best;
    }
    x = next;
  }
  throw NumericalFailure("largest_zero: Newton/bisection did not converge for l=" +
                         std::to_string(l));
}

int sturm_count(const Tridiag& m, double x) {
  const std::size_t n = m.size();
  int count = 0;
  double q = m.diag[0] - x;
  const double tiny = std::numeric_limits<double>::min() / kEps;
  for (std::size_t i = 0;; ++i) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    if (i + 1 == n) break;
    q = m.diag[i + 1] - x - m.offdiag[i] * m.offdiag[i] / q;
  }
  return count;
}

TridiagEigenpair tridiag_max_eigenpair(const Tridiag& m) {
  m.validate();
  const std::size_t n = m.size();
  if (n == 1) return {m.diag[0], {1.0}};

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(m.offdiag[i - 1]);
    if (i + 1 < n) r += std::abs(m.offdiag[i]);
    lo = std::min(lo, m.diag[i] - r);
    hi = std::max(hi, m.diag[i] + r);
  }
  const double pad = kEps * std::max({std::abs(lo), std::abs(hi), 1.0});
  lo -= pad;
  hi += pad;

  const int top = static_cast<int>(n) - 1;
  const double lambda = bisect_eigenvalue(m, top, lo, hi);
  const double second = bisect_eigenvalue(m, top - 1, lo, hi);
  if (lambda - second < kDegeneracyGap) {
    throw NumericalFailure(
        "tridiag_max_eigenpair: top eigenvalue is (nearly) degenerate");
  }

  std::vector<double> v(n, 1.0);
  for (int it = 0; it < 4; ++it) {
    solve_shifted(m, lambda, v);
    double norm = 0.0;
    for (double e : v) norm += e * e;
    norm = std::sqrt(norm);
    for (double& e : v) e /= norm;
  }
  for (double e : v) {
    if (e != 0.0) {
      if (e < 0.0)
        for (double& f : v) f = -f;
      break;
    }
  }
  return {lambda, std::move(v)};
}

HermitianEigen hermitian_eigensystem(const Eigen::MatrixXcd& h) {
  require(h.rows() == h.cols(), "hermitian_eigensystem: matrix not square");
  const Eigen::Index n = h.rows();
  require((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-10 || n == 0,
          "hermitian_eigensystem: matrix not Hermitian within 1e-10");

  Eigen::MatrixXcd a = 0.5 * (h + h.adjoint());
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);
  const double fro = std::max(a.norm(), std::numeric_limits<double>::min());

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-16 * fro) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const std::complex<double> apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= 1e-300) continue;
        const std::complex<double> phase = std::conj(apq) / g;  // e^{-i arg}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const std::complex<double> jpp = c, jpq = s;
        const std::complex<double> jqp = -s * phase, jqq = c * phase;

        for (Eigen::Index k = 0; k < n; ++k) {
          const auto akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const auto apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const auto vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) {
    return a(x, x).real() < a(y, y).real();
  });
  HermitianEigen out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

Eigen::MatrixXcd exp_i_hermitian(const Eigen::MatrixXcd& h, double t) {
  const HermitianEigen eig = hermitian_eigensystem(h);
  const Eigen::Index n = h.rows();
  Eigen::VectorXcd phases(n);
  for (Eigen::Index k = 0; k < n; ++k)
    phases(k) = std::polar(1.0, t * eig.values[k]);
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

double entropy_bits(std::span<const double> spectrum) {
  double s = 0.0;
  for (double p : spectrum)
    if (p > 0.0) s -= p * std::log2(p);
  return s;
}

ScalarOptimum golden_section_maximize(const std::function<double(double)>& f,
                                      double lo, double hi, double tol) {
  require(hi > lo && tol > 0.0, "golden_section_maximize: bad interval");
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? ScalarOptimum{x1, f1} : ScalarOptimum{x2, f2};
}

double bessel_j0(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(std::abs(sum), 1e-300)) break;
  }
  return sum;
}

double bessel_j1(double x) {
  const double q = 0.25 * x * x;
  double term = 0.5 * x, sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(std::abs(sum), 1e-300)) break;
  }
  return sum;
}

double bessel_j0_first_zero() {
  double x = 2.4;
  for (int it = 0; it < 50; ++it) {
    const double dx = bessel_j0(x) / bessel_j1(x);  // J0' = -J1
    x += dx;
    if (std::abs(dx) <= 2 * kEps * x) break;
  }
  return x;
}

}  // namespace spinlab::numerics
