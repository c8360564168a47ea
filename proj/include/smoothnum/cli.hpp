#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smoothnum/errors.hpp"
#include "smoothnum/types.hpp"

namespace smoothnum {

enum class Command {
  Psi,
  Lambda,
  G,
  VerifyTheorem1,
  VerifyPsiover,
  BiasScan,
  LiDensity,
  CalibratePiLi,
};

std::string_view command_name(Command c);

/// n points log-spaced over [y0, y1]; n = 0 is the empty grid.
struct GridSpec {
  Real y0 = 0;
  Real y1 = 0;
  std::size_t n = 0;
  std::vector<Real> points() const;
};

/// Parses "y0:y1:n". Throws ParseError.
GridSpec parse_grid(const std::string& text);

struct RunConfig {
  Command command = Command::Psi;
  Real x = 0;
  Real y = 0;
  Real s_re = 0.75;
  Real s_im = 0;
  std::optional<GridSpec> grid;
  std::vector<Real> beta0s;  // x = x(y) at each beta0
  std::vector<Real> us;      // x = y^u for each u
  std::string zeros_path;
  Real t_max = 0;              // zero height; 0 means the whole file
  std::size_t ordinates = 0;   // use only the first n ordinates; 0 means all
  Real beta0 = 0.75;
  std::uint64_t seed = 0;
  std::uint64_t n_samples = 1'000'000;
  unsigned threads = 1;
  std::string output_path;  // empty: standard output
  std::string plot_path;    // empty: no plot data
  Real rho_step = 1.0 / 256;
  Real u_max = 500;
};

/// Checks parameter ranges before any computation. Throws DomainError or ParseError.
void validate(const RunConfig& cfg);

/// Executes the command, writing its report to cfg.output_path or to out.
void run(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Process exit status for an error kind; 2 is reserved for usage errors, 1 for internal ones.
int exit_code(ErrorKind kind);

/// Locale-independent form with 17 significant digits; "nan" for NaN.
std::string format_real(Real v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<Real>> rows;
};

/// Reads a numeric CSV as written by run. Throws ParseError with the line number.
CsvTable parse_csv(std::istream& in);

}  // namespace smoothnum
