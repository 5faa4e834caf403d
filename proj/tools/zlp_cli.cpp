// zlp: command-line front end. Exit codes: 0 success, 1 computational
// failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "zlp/experiments.hpp"

namespace {

constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::map<std::string, double> values;
  std::string grid, variant, suite, format = "csv", out, zeros;
  int id = 0;
  int resolution = 0;
  unsigned threads = 0;
};

void add_value(CLI::App* cmd, Flags& f, const std::string& key, const std::string& flag, const std::string& help) {
  cmd->add_option_function<double>(flag, [&f, key](double v) { f.values[key] = v; }, help);
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", f.out, "Write output to this file instead of stdout");
  cmd->add_option("--threads", f.threads, "Worker threads for quadrature (0 = all cores)");
}

void add_lorentz(CLI::App* cmd, Flags& f) {
  add_value(cmd, f, "t_max", "--t-max", "Truncation height of the t-integral");
  add_value(cmd, f, "tol", "--tol", "Absolute tolerance");
  cmd->add_option("--zeros", f.zeros, "Zero-ordinate file used as panel breakpoints");
}

bool write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream file(path);
  file << text;
  return static_cast<bool>(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lorentz potentials of ln|zeta| and the hidden-symmetry experiment"};
  app.require_subcommand(1);
  Flags f;

  auto* eval = app.add_subcommand("eval", "zeta, ln|zeta| and zeta'/zeta at rho + i t");
  add_value(eval, f, "rho", "--rho", "Real part");
  add_value(eval, f, "t", "--t", "Imaginary part");
  add_value(eval, f, "tol", "--tol", "Absolute tolerance");

  auto* potential = app.add_subcommand("potential", "Lorentz mean of ln|zeta| on Re s = rho");
  add_value(potential, f, "rho", "--rho", "Line abscissa (> 1/2)");
  add_value(potential, f, "rho0", "--rho0", "Kernel scale (defaults to rho)");
  add_lorentz(potential, f);

  auto* phi1 = app.add_subcommand("phi1", "Numeric and closed-form phi1(alpha)");
  auto* phi2 = app.add_subcommand("phi2", "Numeric and closed-form phi2(alpha)");
  for (auto* cmd : {phi1, phi2}) {
    add_value(cmd, f, "alpha", "--alpha", "alpha > 0, away from 1/2");
    add_lorentz(cmd, f);
  }

  auto* field = app.add_subcommand("field", "Closed-form field at alpha");
  add_value(field, f, "alpha", "--alpha", "alpha > 0, away from 1/2");
  field->add_option("--variant", f.variant, "d_alpha or d_rho")->check(CLI::IsMember({"d_alpha", "d_rho"}));

  auto* solve = app.add_subcommand("solve", "Solve zeta(2 alpha') = 1/(1 - 2 alpha)");
  add_value(solve, f, "alpha", "--alpha", "alpha in (0, 1/2)");
  add_value(solve, f, "tol", "--tol", "Residual tolerance");

  auto* experiment = app.add_subcommand("experiment", "The zeta(2 alpha') = e run, or a sweep with --grid");
  add_value(experiment, f, "theta_max", "--theta-max", "Upper end of the theta integral");
  add_value(experiment, f, "tol", "--tol", "Quadrature and solver tolerance");
  experiment->add_option("--grid", f.grid, "alpha sweep START:STOP:STEP");
  experiment->add_option("--zeros", f.zeros, "Zero-ordinate file used as panel breakpoints");

  auto* figure = app.add_subcommand("figure", "Emit figure data as x,series,y CSV");
  figure->add_option("--id", f.id, "Figure 1, 2 or 3")->required();
  figure->add_option("--resolution", f.resolution, "Samples per series");

  auto* validate = app.add_subcommand("validate", "Run a validation suite");
  validate->add_option("--suite", f.suite, "quadrature, zeta, theorem1 or symmetry")->required();

  for (auto* cmd : {eval, potential, phi1, phi2, field, solve, experiment, figure, validate}) add_common(cmd, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  zlp::RunConfig cfg;
  cfg.command = *zlp::parse_command(app.get_subcommands().front()->get_name());
  cfg.parameters = f.values;
  if (!f.grid.empty()) cfg.grid = f.grid;
  if (!f.variant.empty()) cfg.variant = f.variant;
  if (!f.suite.empty()) cfg.suite = f.suite;
  if (figure->parsed()) cfg.figure_id = f.id;
  if (f.resolution != 0) cfg.resolution = f.resolution;
  if (!f.out.empty()) cfg.output_path = f.out;
  if (!f.zeros.empty()) cfg.zeros_path = f.zeros;
  cfg.format = f.format == "json" ? zlp::OutputFormat::Json : zlp::OutputFormat::Csv;
  cfg.threads = f.threads;

  try {
    zlp::validate(cfg);
  } catch (const zlp::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const auto outcome = zlp::run(cfg, &std::cerr);
    const std::string record = zlp::render(outcome.record, cfg.format);
    bool written = true;
    if (outcome.figure) {
      // Data goes to --out (or stdout); the record then goes to stdout (or stderr).
      written = write_text(f.out, zlp::to_csv(*outcome.figure));
      (f.out.empty() ? std::cerr : std::cout) << record;
    } else {
      written = write_text(f.out, record);
    }
    if (!written) {
      std::cerr << "error: could not write output\n";
      return kExitComputation;
    }
    return outcome.ok ? 0 : kExitComputation;
  } catch (const zlp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitComputation;
  }
}
