#include "spinlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinlab/codes.hpp"
#include "spinlab/error.hpp"
#include "spinlab/fidelity.hpp"
#include "spinlab/infogain.hpp"
#include "spinlab/numerics.hpp"
#include "spinlab/povm.hpp"
#include "spinlab/su2.hpp"

namespace spinlab::cli {

namespace {

using codes::Direction;
using su2::HalfInt;

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

// Collects named residual checks.
class Suite {
 public:
  void check(std::string name, double residual, double tol) {
    const bool ok = std::isfinite(residual) && residual <= tol;
    results_.push_back({std::move(name), residual, tol, ok});
  }
  // Runs `body`; a thrown exception counts as a failed check.
  template <class F>
  void guarded(const std::string& name, double tol, F&& body) {
    try {
      check(name, body(), tol);
    } catch (const std::exception&) {
      results_.push_back({name, std::numeric_limits<double>::infinity(), tol, false});
    }
  }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::vector<CheckResult> results_;
};

const double kRotationExact[] = {2.0 / 3.0, (3.0 + std::sqrt(3.0)) / 6.0,
                                 (6.0 + std::sqrt(6.0)) / 10.0,
                                 (5.0 + std::sqrt(15.0)) / 10.0};
const double kRotationFourDigit[] = {0.9114, 0.9306, 0.9429};

double commutator_residual(const su2::SpinOperators& s) {
  const std::complex<double> i{0.0, 1.0};
  const double a = (s.x * s.y - s.y * s.x - i * s.z).cwiseAbs().maxCoeff();
  const double b = (s.y * s.z - s.z * s.y - i * s.x).cwiseAbs().maxCoeff();
  const double c = (s.z * s.x - s.x * s.z - i * s.y).cwiseAbs().maxCoeff();
  return std::max({a, b, c});
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

void write_table(const Table& t, Format format, std::ostream& out) {
  if (format == Format::csv) {
    for (std::size_t i = 0; i < t.header.size(); ++i)
      out << (i ? "," : "") << t.header[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
      out << '\n';
    }
    return;
  }
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto& c = row[i];
      if (const auto* n = std::get_if<std::int64_t>(&c)) {
        obj[t.header[i]] = *n;
      } else if (const auto* d = std::get_if<double>(&c)) {
        // Round to the same 15 digits the CSV shows.
        if (std::isfinite(*d)) {
          obj[t.header[i]] = std::stod(format_number(*d));
        } else {
          obj[t.header[i]] = nullptr;
        }
      } else {
        obj[t.header[i]] = std::get<std::string>(c);
      }
    }
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

Table cmd_table(int max_n) {
  if (max_n < 1 || max_n > 1000) throw UsageError("--max-n must be in [1, 1000]");
  Table t{{"N", "F_rotation", "F_parallel", "F_optimal"}, {}};
  for (int n = 1; n <= max_n; ++n) {
    t.rows.push_back({std::int64_t{n}, fidelity::max_fidelity_rotation(n).fidelity,
                      fidelity::fidelity_parallel(n), fidelity::fidelity_optimal_qubits(n)});
  }
  return t;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const bool full = options.level == VerifyLevel::full;
  const auto builder = options.m_builder ? options.m_builder : fidelity::build_m;
  auto optimum = [&](int n) { return fidelity::rotation_optimum_from(builder(n), n); };
  // Quadrature fidelity of the code found by the eigen route.
  auto code_fidelity = [](const codes::MultiRepState& code) {
    return fidelity::fidelity_quadrature(
        code, codes::decoder_state(code.space, Direction::z_axis()));
  };
  Suite s;

  for (int n = 1; n <= 4; ++n) {
    s.guarded("rotation_optimum.N=" + std::to_string(n), 1e-10, [&] {
      const auto opt = optimum(n);
      const double ref = kRotationExact[n - 1];
      return std::max(std::abs(opt.fidelity - ref), std::abs(code_fidelity(opt.code) - ref));
    });
  }
  for (int n = 5; n <= 7; ++n) {
    s.guarded("rotation_optimum.N=" + std::to_string(n), 5e-5, [&] {
      return std::abs(optimum(n).fidelity - kRotationFourDigit[n - 5]);
    });
  }

  const int triangle_max = full ? 12 : 6;
  for (int n = 1; n <= triangle_max; ++n) {
    s.guarded("triangle.eigen_vs_poly.N=" + std::to_string(n), 1e-12, [&] {
      return std::abs(optimum(n).fidelity - fidelity::max_fidelity_polynomial(n));
    });
    s.guarded("triangle.eigen_vs_quadrature.N=" + std::to_string(n), 1e-9, [&] {
      const auto opt = optimum(n);
      return std::abs(opt.fidelity - code_fidelity(opt.code));
    });
  }

  const int d_max = full ? 32 : 8;
  s.guarded("optimal_d_over_d_plus_1.d=2.." + std::to_string(d_max), 1e-10, [&] {
    double worst = 0.0;
    for (int d = 2; d <= d_max; ++d) {
      const auto code = codes::MultiRepState::coherent(d);
      const double f =
          fidelity::fidelity_quadrature(code, codes::decoder_state(code.space, Direction::z_axis()));
      worst = std::max(worst, std::abs(f - fidelity::fidelity_optimal(d)));
    }
    return worst;
  });

  s.guarded("alpha_pi_over_4_fidelity", 1e-12, [&] {
    double worst = 0.0;
    for (double beta : {0.0, 0.7, std::numbers::pi}) {
      const auto code = codes::AlphaFamily{std::numbers::pi / 4, beta}.code();
      const double f = fidelity::fidelity_quadrature(
          code, codes::matched_decoder_state(code, Direction::z_axis()));
      worst = std::max(worst, std::abs(f - kRotationExact[1]));
    }
    return worst;
  });

  s.guarded("identity.von_neumann_pair", 1e-10,
            [] { return povm::check_identity(povm::von_neumann_pair({1.1, 0.4})); });
  s.guarded("identity.octahedron", 1e-10,
            [] { return povm::check_identity(povm::octahedron_povm()); });
  for (int n = 1; n <= 6; ++n) {
    s.guarded("identity.grid.N=" + std::to_string(n), 1e-10, [&] {
      return povm::check_identity(
          povm::quadrature_povm(codes::CodeSpace::rotation(n), n + 2, n + 2));
    });
  }
  s.guarded("octahedron_fidelity", 1e-12, [] {
    return std::abs(povm::povm_fidelity_exact(codes::MultiRepState::coherent(4),
                                              povm::octahedron_povm(), 5, 5) -
                    0.8);
  });

  const int s_max_twice = full ? 25 : 8;
  s.guarded("spin_algebra.S<=" + HalfInt(s_max_twice).str(), 1e-12, [&] {
    double worst = 0.0;
    for (int tw = 1; tw <= s_max_twice; ++tw) {
      const auto ops = su2::spin_operators(HalfInt(tw));
      const double j = 0.5 * tw;
      const auto id = Eigen::MatrixXcd::Identity(tw + 1, tw + 1);
      worst = std::max({worst, commutator_residual(ops),
                        (ops.casimir() - j * (j + 1.0) * id).cwiseAbs().maxCoeff()});
    }
    return worst;
  });
  s.guarded("peres.algebra", 1e-13, [] {
    const auto g = su2::peres_generators();
    const auto id = Eigen::MatrixXcd::Identity(4, 4);
    return std::max(commutator_residual(g),
                    (g.casimir() - 3.75 * id).cwiseAbs().maxCoeff());
  });
  s.guarded("peres.product_at_pi", 1e-10, [] {
    const auto g = su2::peres_generators();
    const Eigen::Vector4cd up_up(1, 0, 0, 0);
    return su2::entanglement_entropy(numerics::exp_i_hermitian(g.y, std::numbers::pi) * up_up);
  });
  s.guarded("peres.entangled_at_half_pi", 0.0, [] {
    const auto g = su2::peres_generators();
    const Eigen::Vector4cd up_up(1, 0, 0, 0);
    const double e =
        su2::entanglement_entropy(numerics::exp_i_hermitian(g.y, std::numbers::pi / 2) * up_up);
    return e > 0.01 ? 0.0 : 0.01 - e;
  });

  s.guarded("overlap_closed_forms", 1e-12, [] {
    double worst = 0.0;
    const HalfInt s32(3), h(1);
    for (int i = 0; i <= 200; ++i) {
      const double theta = std::numbers::pi * i / 200;
      const double c = std::cos(theta);
      const double d33 = su2::wigner_small_d(s32, s32, s32, theta);
      const double d11 = su2::wigner_small_d(s32, h, h, theta);
      worst = std::max({worst,
                        std::abs(d33 * d33 - su2::overlap_sq_32(c, su2::Projection32::three_halves)),
                        std::abs(d11 * d11 - su2::overlap_sq_32(c, su2::Projection32::one_half))});
    }
    return worst;
  });

  s.guarded("source_entropies", 1e-8, [] {
    const auto quad = numerics::gauss_legendre(8);
    const double expect[] = {1.0, std::log2(3.0), 2.0};
    double worst = 0.0;
    for (int d = 2; d <= 4; ++d) {
      const double e = codes::von_neumann_entropy(
          codes::source_density(codes::MultiRepState::coherent(d), quad, 8));
      worst = std::max(worst, std::abs(e - expect[d - 2]));
    }
    const double e31 = codes::von_neumann_entropy(codes::source_density(
        codes::AlphaFamily{std::numbers::pi / 4, 0.0}.code(), quad, 8));
    return std::max(worst, std::abs(e31 - (1.0 + 0.5 * std::log2(3.0))));
  });

  s.guarded("infogain.closed.N=2", 5e-5,
            [] { return std::abs(infogain::info_gain_closed(2) - 0.9180); });

  if (full) {
    s.guarded("infogain.alpha_pi_over_4", 5e-5, [] {
      return std::abs(infogain::alpha_family_gain(std::numbers::pi / 4) - 0.8664);
    });
    std::optional<infogain::AlphaOptimum> opt;
    s.guarded("infogain.maximize_alpha.location", 1e-3, [&] {
      opt = infogain::maximize_alpha(1e-6);
      return std::abs(opt->alpha / std::numbers::pi - 0.2317);
    });
    s.guarded("infogain.maximize_alpha.gain", 5e-4, [&] {
      if (!opt) throw NumericalFailure("maximize_alpha failed");
      return std::abs(opt->gain - 0.8729);
    });
    s.guarded("asymptotic.N=200_within_3pct", 0.03, [] {
      const double xi = numerics::bessel_j0_first_zero();
      const auto rows = fidelity::asymptotic_table(200);
      return std::abs(rows.back().scaled_deficit / (xi * xi) - 1.0);
    });
    s.guarded("asymptotic.monotone", 0.0, [] {
      const auto rows = fidelity::asymptotic_table(200);
      int violations = 0;
      for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].fidelity > rows[i - 1].fidelity)) ++violations;
      return static_cast<double>(violations);
    });
  }
  return s.take();
}

Table verification_table(const std::vector<CheckResult>& checks) {
  Table t{{"check", "residual", "tolerance", "status"}, {}};
  for (const auto& c : checks)
    t.rows.push_back({c.name, c.residual, c.tolerance, std::string(c.pass ? "PASS" : "FAIL")});
  return t;
}

Table cmd_simulate(int nspins, PovmKind povm_kind, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw UsageError("--shots must be >= 1");
  std::optional<codes::MultiRepState> code;
  std::optional<povm::FinitePovm> p;
  double reference = 0.0;
  if (povm_kind == PovmKind::octahedron) {
    if (nspins != 2)
      throw UsageError("the octahedron POVM needs --n 2 (the d=4 spin-3/2 code)");
    code = codes::MultiRepState::coherent(4);
    p = povm::octahedron_povm();
    reference = fidelity::fidelity_optimal(4);
  } else {
    if (nspins < 1 || nspins > 12) throw UsageError("--n must be in [1, 12] for the grid POVM");
    auto opt = fidelity::max_fidelity_rotation(nspins);
    reference = opt.fidelity;
    code = std::move(opt.code);
    p = povm::quadrature_povm(*code, nspins + 2, nspins + 2);
  }
  const auto r = povm::simulate(*code, *p, shots, seed);
  const double z = r.std_error > 0.0 ? (r.mean - reference) / r.std_error
                                     : (r.mean == reference ? 0.0 : INFINITY);
  return {{"n", "povm", "shots", "seed", "f_hat", "stderr", "reference", "z"},
          {{std::int64_t{nspins}, std::string(povm_kind == PovmKind::grid ? "grid" : "octahedron"),
            static_cast<std::int64_t>(shots), static_cast<std::int64_t>(seed), r.mean,
            r.std_error, reference, z}}};
}

Table cmd_infogain(InfogainMode mode) {
  Table t;
  switch (mode) {
    case InfogainMode::closed:
      t.header = {"N", "d", "info_gain"};
      for (int n = 1; n <= 8; ++n)
        t.rows.push_back({std::int64_t{n}, std::int64_t{1} << n, infogain::info_gain_closed(n)});
      break;
    case InfogainMode::quadrature:
      t.header = {"N", "d", "closed", "quadrature", "abs_diff"};
      for (int n = 1; n <= 4; ++n) {
        const int d = 1 << n;
        const auto code = codes::MultiRepState::coherent(d);
        const double q = infogain::info_gain_quadrature(
            code, codes::decoder_state(code.space, Direction::z_axis()));
        const double c = infogain::info_gain_closed(n);
        t.rows.push_back({std::int64_t{n}, std::int64_t{d}, c, q, std::abs(q - c)});
      }
      break;
    case InfogainMode::alpha_scan: {
      t.header = {"kind", "alpha_over_pi", "info_gain"};
      for (int i = 0; i <= 64; ++i) {
        const double a = 0.5 * i / 64.0;
        t.rows.push_back({std::string("scan"), a,
                          infogain::alpha_family_gain(a * std::numbers::pi)});
      }
      const auto opt = infogain::maximize_alpha(1e-6);
      t.rows.push_back({std::string("max"), opt.alpha / std::numbers::pi, opt.gain});
      break;
    }
  }
  return t;
}

Table cmd_asymptotic(int max_n) {
  if (max_n < 10 || max_n > 10000) throw UsageError("--max-n must be in [10, 10000]");
  const double xi = numerics::bessel_j0_first_zero();
  Table t{{"N", "F", "scaled_deficit", "xi_sq"}, {}};
  for (const auto& r : fidelity::asymptotic_table(max_n))
    t.rows.push_back({std::int64_t{r.nspins}, r.fidelity, r.scaled_deficit, xi * xi});
  return t;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Direction-encoding fidelities for N spin-1/2 systems", "spinlab"};
  app.require_subcommand(1);

  std::string format = "csv";
  std::string out_path;
  int max_n = 7;
  int asym_max_n = 200;
  int nspins = 2;
  std::string level = "fast";
  std::string povm_name = "grid";
  std::uint64_t shots = 1000000;
  std::uint64_t seed = 1;
  std::string mode = "closed";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_path, "write to FILE instead of stdout");
  };
  auto* table = app.add_subcommand("table", "maximal fidelities per number of spins");
  table->add_option("--max-n", max_n, "largest N (1..1000)");
  common(table);
  auto* verify = app.add_subcommand("verify", "run the cross-check suite");
  verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  common(verify);
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo of encode/measure/guess");
  simulate->add_option("--n", nspins, "number of spins");
  simulate->add_option("--povm", povm_name, "grid or octahedron")
      ->check(CLI::IsMember({"grid", "octahedron"}));
  simulate->add_option("--shots", shots, "number of shots");
  simulate->add_option("--seed", seed, "RNG seed");
  common(simulate);
  auto* info = app.add_subcommand("infogain", "average information gain");
  info->add_option("--mode", mode, "closed, quadrature or alpha-scan")
      ->check(CLI::IsMember({"closed", "quadrature", "alpha-scan"}));
  common(info);
  auto* asym = app.add_subcommand("asymptotic", "large-N scan of N^2 (1 - F)");
  asym->add_option("--max-n", asym_max_n, "largest N (10..10000)");
  common(asym);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const Format fmt = format == "json" ? Format::json : Format::csv;
  try {
    Table result;
    int status = 0;
    if (*table) {
      result = cmd_table(max_n);
    } else if (*verify) {
      const auto checks = run_verification(
          {level == "full" ? VerifyLevel::full : VerifyLevel::fast, {}});
      result = verification_table(checks);
      status = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; })
                   ? 0
                   : 1;
    } else if (*simulate) {
      result = cmd_simulate(nspins, povm_name == "octahedron" ? PovmKind::octahedron
                                                               : PovmKind::grid,
                            shots, seed);
    } else if (*info) {
      result = cmd_infogain(mode == "closed"       ? InfogainMode::closed
                            : mode == "quadrature" ? InfogainMode::quadrature
                                                   : InfogainMode::alpha_scan);
    } else {
      result = cmd_asymptotic(asym_max_n);
    }

    if (out_path.empty()) {
      write_table(result, fmt, out);
    } else {
      std::ofstream file(out_path);
      if (!file) throw UsageError("cannot open " + out_path + " for writing");
      write_table(result, fmt, file);
    }
    return status;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ContractViolation& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace spinlab::cli
