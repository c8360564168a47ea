#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "smoothnum/cli.hpp"
#include "smoothnum/errors.hpp"

namespace {

using smoothnum::Command;
using smoothnum::RunConfig;

void add_precision(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--rho-step", cfg.rho_step, "Grid step of the rho table")->capture_default_str();
  sub->add_option("--u-max", cfg.u_max, "Largest u covered by the rho table")->capture_default_str();
}

void add_output(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-o,--output", cfg.output_path, "CSV destination (default: standard output)");
  sub->add_option("--plot", cfg.plot_path,
                  "Write plot data to this path and a matplotlib script to PATH.py");
}

void add_zeros(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--zeros", cfg.zeros_path, "File of zeta zero ordinates, one per line");
  sub->add_option("--T", cfg.t_max, "Zero height cut-off (0: whole file)")->capture_default_str();
  sub->add_option("--ordinates", cfg.ordinates, "Use only the first N ordinates (0: all)")
      ->capture_default_str();
}

void add_grid(CLI::App* sub, RunConfig& cfg, std::string& grid_text) {
  sub->add_option("--grid", grid_text, "y0:y1:n, n log-spaced values of y");
  sub->add_option("--y", cfg.y, "Single value of y instead of a grid");
  sub->add_option("--beta0", cfg.beta0s, "Take x = x(y) at each beta0 (repeatable)");
  sub->add_option("--u", cfg.us, "Take x = y^u for each u (repeatable)");
  sub->add_option("--threads", cfg.threads, "Worker threads for grid points")->capture_default_str();
}

void add_density(CLI::App* sub, RunConfig& cfg, bool with_beta0) {
  if (with_beta0) sub->add_option("--beta0", cfg.beta0, "beta0 in (1/2, 1)")->capture_default_str();
  sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  sub->add_option("--n", cfg.n_samples, "Number of samples")->capture_default_str();
  sub->add_option("--threads", cfg.threads, "Sampling threads")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smooth-number counts, de Bruijn's Lambda and the G(s,y) correction"};
  app.set_config("--config", "", "TOML or INI file of option defaults; flags take precedence");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string grid_text;

  auto* psi = app.add_subcommand("psi", "Exact count of y-smooth n <= x");
  psi->add_option("--x", cfg.x, "x (integer)")->required();
  psi->add_option("--y", cfg.y, "y (integer)")->required();

  auto* lambda = app.add_subcommand("lambda", "de Bruijn's Lambda(x,y)");
  lambda->add_option("--x", cfg.x, "x")->required();
  lambda->add_option("--y", cfg.y, "y")->required();
  add_precision(lambda, cfg);

  auto* g = app.add_subcommand("g", "G(s,y) by both routes");
  g->add_option("--s", cfg.s_re, "Real part of s")->capture_default_str();
  g->add_option("--s-imag", cfg.s_im, "Imaginary part of s")->capture_default_str();
  g->add_option("--y", cfg.y, "y")->required();
  add_output(g, cfg);

  auto* theorem = app.add_subcommand("verify-theorem1", "Psi against Lambda and Lambda*G(beta,y) on a grid");
  auto* psiover = app.add_subcommand("verify-psiover", "Grid report including the zero-sum prediction of Psi/Lambda");
  auto* scan = app.add_subcommand("bias-scan", "Normalized deviation and zero-sum model along x = x(y)");
  for (auto* sub : {theorem, psiover, scan}) {
    add_grid(sub, cfg, grid_text);
    add_zeros(sub, cfg);
    add_output(sub, cfg);
    add_precision(sub, cfg);
  }

  auto* li = app.add_subcommand("li-density", "Monte Carlo density of positive bias under independent phases");
  auto* calib = app.add_subcommand("calibrate-pi-li", "The same sampler for the pi(x) < Li(x) race");
  add_density(li, cfg, true);
  add_density(calib, cfg, false);
  for (auto* sub : {li, calib}) {
    add_zeros(sub, cfg);
    add_output(sub, cfg);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[usage]: " << e.what() << '\n';
    return 2;
  }

  const std::pair<CLI::App*, Command> table[] = {
      {psi, Command::Psi},
      {lambda, Command::Lambda},
      {g, Command::G},
      {theorem, Command::VerifyTheorem1},
      {psiover, Command::VerifyPsiover},
      {scan, Command::BiasScan},
      {li, Command::LiDensity},
      {calib, Command::CalibratePiLi},
  };
  for (const auto& [sub, command] : table) {
    if (sub->parsed()) cfg.command = command;
  }

  try {
    if (!grid_text.empty()) cfg.grid = smoothnum::parse_grid(grid_text);
    smoothnum::run(cfg, std::cout, std::cerr);
    std::cout.flush();
    if (!std::cout) {
      std::cerr << "error[io]: failed writing standard output\n";
      return smoothnum::exit_code(smoothnum::ErrorKind::Io);
    }
  } catch (const smoothnum::Error& e) {
    std::cerr << "error[" << smoothnum::to_string(e.kind()) << "]: " << e.what() << '\n';
    return smoothnum::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
