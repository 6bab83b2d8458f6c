#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qfl/acceptance.hpp"
#include "qfl/trajectory_io.hpp"

namespace qfl::cli {

namespace {

struct RunFlags {
  std::string scenario;
  std::optional<double> eg, ee, omega, gamma, shift, b_field, temperature, ee_end, t_max;
  double shift_coeff = 1.0;
  std::size_t steps = 2000;
  std::string out;
  std::string trajectory_out;
  std::string sweep;
};

ScenarioSpec to_spec(const RunFlags& f) {
  const auto kind = parse_scenario_kind(f.scenario);
  if (!kind) throw Error(ErrorCode::InvalidSpec, "unknown scenario '" + f.scenario + "'");
  ScenarioSpec s;
  s.kind = *kind;
  if (f.eg) s.e_ground = *f.eg;
  if (f.ee) s.e_excited = *f.ee;
  s.omega = f.omega;
  s.gamma = f.gamma;
  s.shift = f.shift;
  s.b_field = f.b_field;
  s.shift_coefficient = f.shift_coeff;
  s.temperature = f.temperature;
  s.e_excited_end = f.ee_end;
  s.steps = f.steps;
  if (f.t_max) {
    s.t_max = *f.t_max;
  } else if (s.kind == ScenarioKind::SpontaneousEmission && s.gamma && *s.gamma > 0.0) {
    s.t_max = 10.0 / *s.gamma;
  }
  return s;
}

void set_parameter(ScenarioSpec& s, const std::string& name, double value) {
  if (name == "eg") s.e_ground = value;
  else if (name == "ee") s.e_excited = value;
  else if (name == "omega") s.omega = value;
  else if (name == "gamma") s.gamma = value;
  else if (name == "shift") s.shift = value;
  else if (name == "b-field") s.b_field = value;
  else if (name == "temperature") s.temperature = value;
  else if (name == "ee-end") s.e_excited_end = value;
  else if (name == "t-max") s.t_max = value;
  else throw Error(ErrorCode::InvalidSpec, "--sweep: unknown parameter '" + name + "'");
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string summary(const ScenarioSpec& spec, const EnergyLedger& ledger) {
  const auto& end = ledger.back();
  std::ostringstream s;
  s << "scenario " << to_string(spec.kind) << ", " << spec.steps << " steps, t in [0, " << num(spec.t_max) << "]\n"
    << "  W      = " << num(end.work) << "\n"
    << "  Q_cal  = " << num(end.heat) << "\n"
    << "  C      = " << num(end.coherence) << "\n"
    << "  dU     = " << num(ledger.delta_energy()) << "\n"
    << "  max closure defect = " << num(first_law_residual(ledger)) << "\n";
  return s.str();
}

std::filesystem::path indexed_path(const std::string& base, std::size_t index) {
  std::filesystem::path p(base);
  const auto ext = p.extension().string();
  p.replace_filename(p.stem().string() + "_" + std::to_string(index) + ext);
  return p;
}

int do_run(const RunFlags& flags, std::ostream& out) {
  const ScenarioSpec base = to_spec(flags);

  std::vector<ScenarioSpec> specs;
  if (flags.sweep.empty()) {
    specs.push_back(base);
  } else {
    const auto eq = flags.sweep.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidSpec, "--sweep expects name=v1,v2,...");
    const std::string name = flags.sweep.substr(0, eq);
    std::stringstream values(flags.sweep.substr(eq + 1));
    for (std::string item; std::getline(values, item, ',');) {
      ScenarioSpec s = base;
      try {
        set_parameter(s, name, std::stod(item));
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::InvalidSpec, "--sweep: bad value '" + item + "'");
      }
      specs.push_back(s);
    }
    if (specs.empty()) throw Error(ErrorCode::InvalidSpec, "--sweep: empty value list");
  }
  for (const auto& s : specs) s.validate();

  // Independent runs; each fills its own slot.
  std::vector<std::string> summaries(specs.size());
  std::vector<std::optional<EnergyLedger>> ledgers(specs.size());
  std::vector<std::string> errors(specs.size());
  std::vector<int> codes(specs.size(), kExitOk);
#pragma omp parallel for schedule(dynamic) if (specs.size() > 1)
  for (long long i = 0; i < static_cast<long long>(specs.size()); ++i) {
    try {
      const auto traj = build_trajectory(specs[i]);
      ledgers[i] = analyze(traj);
      summaries[i] = summary(specs[i], *ledgers[i]);
      if (!flags.trajectory_out.empty()) {
        const auto path = specs.size() == 1 ? std::filesystem::path(flags.trajectory_out) : indexed_path(flags.trajectory_out, i);
        write_trajectory_file(path, traj);
      }
    } catch (const Error& e) {
      errors[i] = e.what();
      codes[i] = e.code() == ErrorCode::InvalidSpec ? kExitUsage : kExitFailure;
    }
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (codes[i] != kExitOk) throw Error(codes[i] == kExitUsage ? ErrorCode::InvalidSpec : ErrorCode::InvalidTrajectory, errors[i]);
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!flags.out.empty()) {
      const auto path = specs.size() == 1 ? std::filesystem::path(flags.out) : indexed_path(flags.out, i);
      write_ledger_file(path, *ledgers[i]);
      out << "ledger written to " << path.string() << "\n";
    }
    out << summaries[i];
  }
  return kExitOk;
}

int do_analyze(const std::string& file, const std::string& out_path, std::ostream& out) {
  const auto ledger = analyze(read_trajectory_file(file));
  if (!out_path.empty()) {
    write_ledger_file(out_path, ledger);
    out << "ledger written to " << out_path << "\n";
  }
  const auto& end = ledger.back();
  out << "trajectory " << file << ", " << ledger.rows.size() << " samples\n"
      << "  W      = " << num(end.work) << "\n"
      << "  Q_cal  = " << num(end.heat) << "\n"
      << "  C      = " << num(end.coherence) << "\n"
      << "  dU     = " << num(ledger.delta_energy()) << "\n"
      << "  max closure defect = " << num(first_law_residual(ledger)) << "\n";
  return kExitOk;
}

int do_verify(double rabi_offset, std::ostream& out) {
  AcceptanceOptions options;
  options.rabi_reference_offset = rabi_offset;
  bool all = true;
  for (const auto& r : run_acceptance(options)) {
    char head[160];
    std::snprintf(head, sizeof head, "[%s] %d. %s (%.2f s)", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
    out << head << "\n      " << r.detail << "\n";
    all = all && r.passed;
  }
  out << (all ? "all checks passed\n" : "some checks FAILED\n");
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"First-law decomposition of quantum trajectories into work, heat and coherence energy", "qfirstlaw"};
  app.require_subcommand(1);

  RunFlags rf;
  auto* run_cmd = app.add_subcommand("run", "Build a scenario trajectory, analyze it and write the ledger");
  run_cmd->add_option("scenario", rf.scenario, "rabi | se | zeeman | isothermal")->required();
  run_cmd->add_option("--eg", rf.eg, "ground-state energy E_g (default 0)");
  run_cmd->add_option("--ee", rf.ee, "excited-state energy E_e (default 1; isothermal: ramp start)");
  run_cmd->add_option("--omega", rf.omega, "Rabi frequency (rabi)");
  run_cmd->add_option("--gamma", rf.gamma, "decay rate (se)");
  run_cmd->add_option("--shift", rf.shift, "total shift of E_e (zeeman)");
  run_cmd->add_option("--b-field", rf.b_field, "field magnitude; shift = shift-coeff * B (zeeman)");
  run_cmd->add_option("--shift-coeff", rf.shift_coeff, "shift per unit field (zeeman, default 1)");
  run_cmd->add_option("--temperature", rf.temperature, "bath temperature, k_B = 1 (isothermal)");
  run_cmd->add_option("--ee-end", rf.ee_end, "final E_e of the ramp (isothermal)");
  run_cmd->add_option("--t-max", rf.t_max, "final time (default 1; se: 10/gamma)");
  run_cmd->add_option("--steps", rf.steps, "number of time steps (default 2000)");
  run_cmd->add_option("--out", rf.out, "ledger CSV path");
  run_cmd->add_option("--emit-trajectory", rf.trajectory_out, "also write the trajectory as JSON");
  run_cmd->add_option("--sweep", rf.sweep, "name=v1,v2,... run one scenario per value");

  std::string file, analyze_out;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a JSON trajectory file");
  analyze_cmd->add_option("file", file, "trajectory file")->required();
  analyze_cmd->add_option("--out", analyze_out, "ledger CSV path");

  double rabi_offset = 0.0;
  auto* verify_cmd = app.add_subcommand("verify", "Run the built-in acceptance checks");
  verify_cmd->add_option("--perturb-rabi-reference", rabi_offset)->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (*run_cmd) return do_run(rf, out);
    if (*analyze_cmd) return do_analyze(file, analyze_out, out);
    if (*verify_cmd) return do_verify(rabi_offset, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidSpec ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace qfl::cli
