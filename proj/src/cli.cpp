#include "smoothnum/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "smoothnum/bias.hpp"
#include "smoothnum/debruijn.hpp"
#include "smoothnum/gfactor.hpp"
#include "smoothnum/primes.hpp"
#include "smoothnum/smoothcount.hpp"
#include "smoothnum/specfun.hpp"
#include "smoothnum/zeta.hpp"

namespace smoothnum {

namespace {

constexpr Real kNan = std::numeric_limits<Real>::quiet_NaN();

const std::vector<std::string> kGridColumns = {
    "x",     "y",      "u",
    "beta",  "psi_exact", "lambda",
    "g_beta", "ratio_uncorrected", "ratio_corrected",
    "model_rhs", "normalized_deviation", "psiover_rhs",
};

struct Series {
  std::string name;
  std::vector<std::pair<Real, Real>> points;
};

void write_csv_row(std::ostream& out, const std::vector<Real>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << format_real(row[i]);
  }
  out << '\n';
}

void write_header(std::ostream& out, const std::vector<std::string>& header) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
}

// The plot data is one block per series; the script beside it renders them.
void write_plot(const std::string& path, const std::string& title,
                const std::vector<Series>& series) {
  std::ofstream data(path);
  if (!data) throw IoError("cannot write plot data " + path);
  for (const auto& s : series) {
    data << "# " << s.name << '\n';
    for (const auto& [a, b] : s.points) data << format_real(a) << ' ' << format_real(b) << '\n';
    data << "\n\n";
  }
  if (!data) throw IoError("failed writing plot data " + path);
  std::ofstream script(path + ".py");
  if (!script) throw IoError("cannot write plot script " + path + ".py");
  script << "import sys\n"
            "import matplotlib\n"
            "matplotlib.use('Agg')\n"
            "import matplotlib.pyplot as plt\n"
            "\n"
            "series, name = {}, None\n"
            "for line in open(sys.argv[1] if len(sys.argv) > 1 else '"
         << path
         << "'):\n"
            "    line = line.strip()\n"
            "    if line.startswith('#'):\n"
            "        name = line[1:].strip()\n"
            "        series[name] = ([], [])\n"
            "    elif line:\n"
            "        a, b = line.split()\n"
            "        series[name][0].append(float(a))\n"
            "        series[name][1].append(float(b))\n"
            "fig, ax = plt.subplots()\n"
            "for name, (xs, ys) in series.items():\n"
            "    ax.plot(xs, ys, marker='.', label=name)\n"
            "ax.set_title('"
         << title
         << "')\n"
            "ax.legend()\n"
            "fig.savefig((sys.argv[1] if len(sys.argv) > 1 else '"
         << path << "') + '.png')\n";
  if (!script) throw IoError("failed writing plot script " + path + ".py");
}

ZeroList load_configured_zeros(const RunConfig& cfg) {
  ZeroList zeros = load_zeros(cfg.zeros_path, 0);
  if (cfg.ordinates > 0) {
    if (cfg.ordinates > zeros.size()) {
      throw RangeError("requested " + std::to_string(cfg.ordinates) + " ordinates but " +
                       cfg.zeros_path + " holds " + std::to_string(zeros.size()));
    }
    zeros = zeros.first(cfg.ordinates);
  }
  if (cfg.t_max > 0) zeros = zeros.truncated(cfg.t_max);
  return zeros;
}

struct GridPoint {
  Real y = 0;
  Real beta0 = kNan;  // set when x = x(y)
  Real u = kNan;      // set when x = y^u
};

std::vector<Real> grid_row(const GridPoint& p, const PrimeTable& pt, const RhoTable& table,
                           const ZeroList* zeros) {
  Real log_y = std::log(p.y);
  Real log_x = std::isnan(p.beta0) ? std::log(std::pow(p.y, p.u)) : x_of_y(p.y, p.beta0);
  PsiEnvelope env = psi_envelope();
  if (log_x > std::log(double(env.max_x))) {
    throw ResourceError("x = exp(" + format_real(log_x) + ") exceeds the psi_exact envelope " +
                        std::to_string(env.max_x));
  }
  Real x = std::isnan(p.beta0) ? std::pow(p.y, p.u) : std::exp(log_x);
  auto ix = static_cast<std::uint64_t>(std::floor(x));
  auto iy = static_cast<std::uint64_t>(std::floor(p.y));
  std::vector<Real> row(kGridColumns.size(), kNan);
  row[0] = x;
  row[1] = p.y;
  Real psi = ix == 0 ? 0 : Real(psi_exact(ix, iy, pt));
  Real lambda = lambda_xy(x, p.y, table);
  row[4] = psi;
  row[5] = lambda;
  row[7] = psi / lambda;
  if (x < p.y) return row;
  SaddleData d = saddle_log(log_x, log_y, table);
  row[2] = d.u;
  row[3] = d.beta;
  Real g = g_value(Complex(d.beta, 0), p.y, pt).g_direct.real();
  row[6] = g;
  row[8] = psi / (lambda * g);
  Real beta = std::isnan(p.beta0) ? d.beta : p.beta0;
  if (beta > 0.5 && beta < 1) {
    row[10] = (psi / lambda - 1) * std::pow(p.y, beta - 0.5) * log_y;
    if (zeros) row[9] = model_rhs(p.y, beta, zeros->height(), *zeros);
  }
  if (zeros && d.beta >= 0.55) row[11] = psiover_rhs(x, p.y, zeros->height(), *zeros, table);
  return row;
}

void run_grid(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  std::vector<Real> ys = cfg.grid ? cfg.grid->points() : std::vector<Real>{};
  if (!cfg.grid && cfg.y > 0) ys.push_back(cfg.y);
  std::vector<GridPoint> points;
  for (Real y : ys) {
    for (Real b : cfg.beta0s) points.push_back({y, b, kNan});
    for (Real u : cfg.us) points.push_back({y, kNan, u});
  }
  std::optional<ZeroList> zeros;
  if (!cfg.zeros_path.empty()) zeros = load_configured_zeros(cfg);

  std::vector<std::vector<Real>> rows(points.size());
  if (!points.empty()) {
    Real y_max = 0;
    for (const auto& p : points) y_max = std::max(y_max, p.y);
    auto limit = static_cast<std::uint64_t>(std::max<Real>(y_max, 1e7));
    PrimeTable pt = PrimeTable::sieve(std::min<std::uint64_t>(limit, PrimeTable::kMaxLimit));
    RhoTable table = build_rho_table(cfg.u_max, cfg.rho_step);
    const ZeroList* zp = zeros ? &*zeros : nullptr;

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(points.size());
    auto worker = [&] {
      for (std::size_t i = next++; i < points.size(); i = next++) {
        try {
          rows[i] = grid_row(points[i], pt, table, zp);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    };
    unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, points.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a[1] != b[1]) return a[1] < b[1];
    return a[0] < b[0];
  });

  write_header(out, kGridColumns);
  for (const auto& r : rows) write_csv_row(out, r);

  if (cfg.command == Command::BiasScan && !rows.empty()) {
    std::size_t positive = 0, agree = 0, with_model = 0;
    for (const auto& r : rows) {
      bool above = r[4] > r[5];
      positive += above;
      if (!std::isnan(r[9])) {
        ++with_model;
        agree += above == (r[9] > 0);
      }
    }
    log << "points " << rows.size() << ", psi > lambda on " << positive;
    if (with_model) log << ", sign agrees with model on " << agree << " of " << with_model;
    log << '\n';
  }

  if (!cfg.plot_path.empty()) {
    std::vector<Series> series{{"ratio_uncorrected", {}}, {"ratio_corrected", {}},
                               {"normalized_deviation", {}}, {"model_rhs", {}}};
    for (const auto& r : rows) {
      Real ly = std::log(r[1]);
      series[0].points.emplace_back(ly, r[7]);
      series[1].points.emplace_back(ly, r[8]);
      series[2].points.emplace_back(ly, r[10]);
      series[3].points.emplace_back(ly, r[9]);
    }
    write_plot(cfg.plot_path, std::string(command_name(cfg.command)) + " against log y", series);
  }
}

void run_density(const RunConfig& cfg, std::ostream& out) {
  ZeroList zeros = load_configured_zeros(cfg);
  BiasConfig bc;
  bc.beta0 = cfg.beta0;
  bc.t_max = zeros.height();
  bc.seed = cfg.seed;
  bc.n_samples = cfg.n_samples;
  bc.threads = cfg.threads;
  DensityMode mode =
      cfg.command == Command::CalibratePiLi ? DensityMode::PiLiCalibration : DensityMode::SmoothBias;
  SampleHistogram hist;
  hist.lo = mode == DensityMode::SmoothBias ? 1 / (2 * cfg.beta0 - 1) - 8 : -3;
  hist.hi = mode == DensityMode::SmoothBias ? 1 / (2 * cfg.beta0 - 1) + 8 : 5;
  DensityEstimate est =
      li_density(bc, zeros, mode, cfg.plot_path.empty() ? nullptr : &hist);
  write_header(out, {"beta0", "T", "ordinates", "seed", "n_samples", "density", "stderr"});
  Real beta0 = mode == DensityMode::SmoothBias ? cfg.beta0 : kNan;
  write_csv_row(out, {beta0, zeros.height(), Real(zeros.size()), Real(cfg.seed),
                      Real(est.n_samples), est.density, est.std_error});
  if (!cfg.plot_path.empty()) {
    Series s{"sample histogram", {}};
    double width = (hist.hi - hist.lo) / double(hist.counts.size());
    for (std::size_t k = 0; k < hist.counts.size(); ++k) {
      s.points.emplace_back(hist.lo + (k + 0.5) * width,
                            Real(hist.counts[k]) / (Real(est.n_samples) * width));
    }
    write_plot(cfg.plot_path, std::string(command_name(cfg.command)) + " sample density", {s});
  }
}

void dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  switch (cfg.command) {
    case Command::Psi: {
      auto x = static_cast<std::uint64_t>(cfg.x);
      auto y = static_cast<std::uint64_t>(cfg.y);
      std::uint64_t limit = std::max<std::uint64_t>({2, y, std::min<std::uint64_t>(x, 10'000'000)});
      PrimeTable pt = PrimeTable::sieve(std::min(limit, PrimeTable::kMaxLimit));
      out << psi_exact(x, y, pt) << '\n';
      return;
    }
    case Command::Lambda: {
      RhoTable table = build_rho_table(cfg.u_max, cfg.rho_step);
      out << format_real(lambda_xy(cfg.x, cfg.y, table)) << '\n';
      return;
    }
    case Command::G: {
      PrimeTable pt = PrimeTable::sieve(static_cast<std::uint64_t>(std::max<Real>(cfg.y, 2)));
      GBreakdown g = g_value(Complex(cfg.s_re, cfg.s_im), cfg.y, pt);
      write_header(out, {"s_re", "s_im", "y", "log_g1_re", "log_g1_im", "log_g2_re", "log_g2_im",
                         "g_factored_re", "g_factored_im", "g_direct_re", "g_direct_im"});
      write_csv_row(out, {g.s.real(), g.s.imag(), g.y, g.log_g1.real(), g.log_g1.imag(),
                          g.log_g2.real(), g.log_g2.imag(), g.g_factored.real(),
                          g.g_factored.imag(), g.g_direct.real(), g.g_direct.imag()});
      return;
    }
    case Command::VerifyTheorem1:
    case Command::VerifyPsiover:
    case Command::BiasScan:
      run_grid(cfg, out, log);
      return;
    case Command::LiDensity:
    case Command::CalibratePiLi:
      run_density(cfg, out);
      return;
  }
}

bool finite_positive(Real v) { return std::isfinite(v) && v > 0; }

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Psi: return "psi";
    case Command::Lambda: return "lambda";
    case Command::G: return "g";
    case Command::VerifyTheorem1: return "verify-theorem1";
    case Command::VerifyPsiover: return "verify-psiover";
    case Command::BiasScan: return "bias-scan";
    case Command::LiDensity: return "li-density";
    case Command::CalibratePiLi: return "calibrate-pi-li";
  }
  return "unknown";
}

std::vector<Real> GridSpec::points() const {
  std::vector<Real> out;
  if (n == 0) return out;
  if (n == 1) return {y0};
  Real a = std::log(y0), b = std::log(y1);
  for (std::size_t i = 0; i < n; ++i) {
    Real t = Real(i) / Real(n - 1);
    out.push_back(i == 0 ? y0 : i + 1 == n ? y1 : std::exp(a + (b - a) * t));
  }
  return out;
}

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  auto first = text.find(':');
  auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw ParseError("grid must look like y0:y1:n, got '" + text + "'", 0);
  }
  auto number = [&](std::size_t from, std::size_t to, auto& value) {
    const char* b = text.data() + from;
    const char* e = text.data() + to;
    auto [ptr, ec] = std::from_chars(b, e, value);
    if (ec != std::errc() || ptr != e) {
      throw ParseError("bad number '" + std::string(b, e) + "' in grid '" + text + "'", 0);
    }
  };
  number(0, first, g.y0);
  number(first + 1, second, g.y1);
  number(second + 1, text.size(), g.n);
  return g;
}

void validate(const RunConfig& cfg) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
  };
  need(finite_positive(cfg.rho_step) && cfg.rho_step <= 1.0 / 64, "--rho-step must lie in (0, 1/64]");
  need(std::isfinite(cfg.u_max) && cfg.u_max >= 2, "--u-max must be at least 2");
  switch (cfg.command) {
    case Command::Psi:
      need(cfg.x >= 1 && cfg.x == std::floor(cfg.x) && cfg.x < 0x1p63, "--x must be a positive integer");
      need(cfg.y >= 1 && cfg.y == std::floor(cfg.y) && cfg.y <= 1e9, "--y must be an integer in [1, 1e9]");
      return;
    case Command::Lambda:
      need(std::isfinite(cfg.x) && cfg.x >= 0, "--x must be finite and non-negative");
      need(std::isfinite(cfg.y) && cfg.y >= 2, "--y must be at least 2");
      return;
    case Command::G:
      need(std::isfinite(cfg.s_re) && cfg.s_re > 0, "--s must have positive real part");
      need(std::isfinite(cfg.s_im), "--s-imag must be finite");
      need(std::isfinite(cfg.y) && cfg.y >= 4 && cfg.y <= 1e9, "--y must lie in [4, 1e9]");
      return;
    case Command::VerifyTheorem1:
    case Command::VerifyPsiover:
    case Command::BiasScan: {
      need(cfg.grid.has_value() || cfg.y > 0, "a grid (--grid) or a single --y is required");
      if (cfg.grid) {
        need(cfg.grid->n == 0 || (cfg.grid->y0 >= 4 && cfg.grid->y1 >= cfg.grid->y0 &&
                                  std::isfinite(cfg.grid->y1) && cfg.grid->y1 <= 1e9),
             "grid bounds must satisfy 4 <= y0 <= y1 <= 1e9");
      } else {
        need(cfg.y >= 4 && cfg.y <= 1e9, "--y must lie in [4, 1e9]");
      }
      need(!cfg.beta0s.empty() || !cfg.us.empty(), "at least one --beta0 or --u is required");
      for (Real b : cfg.beta0s) need(b > 0.5 && b < 1, "--beta0 must lie in (1/2, 1)");
      for (Real u : cfg.us) need(std::isfinite(u) && u >= 1, "--u must be at least 1");
      if (cfg.command != Command::VerifyTheorem1) {
        need(!cfg.zeros_path.empty(), "--zeros is required for this command");
      }
      if (cfg.command == Command::BiasScan) need(cfg.us.empty(), "bias-scan takes --beta0 only");
      need(cfg.t_max >= 0, "--T must be non-negative");
      return;
    }
    case Command::LiDensity:
    case Command::CalibratePiLi:
      need(!cfg.zeros_path.empty(), "--zeros is required for this command");
      if (cfg.command == Command::LiDensity) {
        need(cfg.beta0 > 0.5 && cfg.beta0 < 1, "--beta0 must lie in (1/2, 1)");
      }
      need(cfg.n_samples >= 1000, "--n must be at least 1000");
      need(cfg.seed <= (std::uint64_t(1) << 53), "--seed must be at most 2^53");
      need(cfg.t_max >= 0, "--T must be non-negative");
      return;
  }
}

void run(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  validate(cfg);
  if (cfg.output_path.empty()) {
    dispatch(cfg, out, log);
    return;
  }
  // the report goes to a buffer first so a failed run leaves no partial file
  std::ostringstream buffer;
  dispatch(cfg, buffer, log);
  std::ofstream file(cfg.output_path, std::ios::binary);
  if (!file) throw IoError("cannot open " + cfg.output_path + " for writing");
  file << buffer.str();
  file.flush();
  if (!file) throw IoError("failed writing " + cfg.output_path);
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return 3;
    case ErrorKind::Domain: return 4;
    case ErrorKind::Range: return 5;
    case ErrorKind::Resource: return 6;
    case ErrorKind::Io: return 7;
    case ErrorKind::Pole: return 8;
    case ErrorKind::Singularity: return 9;
  }
  return 1;
}

std::string format_real(Real v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

CsvTable parse_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  long line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      auto comma = s.find(',', start);
      cells.push_back(s.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return cells;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) throw ParseError("blank line in CSV", line_no);
    auto cells = split(line);
    if (line_no == 1) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw ParseError("expected " + std::to_string(t.header.size()) + " fields, got " +
                           std::to_string(cells.size()),
                       line_no);
    }
    std::vector<Real> row;
    for (const auto& c : cells) {
      Real v = 0;
      auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || ptr != c.data() + c.size()) {
        throw ParseError("not a number: '" + c + "'", line_no);
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (line_no == 0) throw ParseError("empty CSV", 0);
  return t;
}

}  // namespace smoothnum
