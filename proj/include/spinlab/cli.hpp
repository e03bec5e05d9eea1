#pragma once

// Batch front-end: `spinlab <table|verify|simulate|infogain|asymptotic>`.
//
// Every command builds a Table that is rendered either as CSV (header line,
// '\n' endings, 15 significant digits) or as a JSON array of flat objects
// whose keys are the CSV headers. Exit codes: 0 success, 1 verification
// failure, 2 usage error.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "spinlab/numerics.hpp"

namespace spinlab::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };
enum class VerifyLevel { fast, full };
enum class PovmKind { grid, octahedron };
enum class InfogainMode { closed, quadrature, alpha_scan };

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest locale-independent rendering with 15 significant digits.
std::string format_number(double v);

void write_table(const Table& t, Format format, std::ostream& out);

Table cmd_table(int max_n);

struct CheckResult {
  std::string name;
  double residual;
  double tolerance;
  bool pass;
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::fast;
  /// Source of the tridiagonal matrix for N spins; replaceable so tests can
  /// confirm that a corrupted matrix is caught.
  std::function<numerics::Tridiag(int)> m_builder;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options);
Table verification_table(const std::vector<CheckResult>& checks);

Table cmd_simulate(int nspins, PovmKind povm, std::uint64_t shots, std::uint64_t seed);
Table cmd_infogain(InfogainMode mode);
Table cmd_asymptotic(int max_n);

/// Parses argv and runs one command. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spinlab::cli
