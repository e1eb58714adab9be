#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "simpsym/errors.hpp"
#include "simpsym/harness.hpp"
#include "simpsym/oscillator.hpp"
#include "simpsym/version.hpp"

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;

std::string num17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

simpsym::harness::Scheme parse_scheme(const std::string& name) {
  using simpsym::harness::Scheme;
  if (name == "newmark") return Scheme::newmark;
  if (name == "simpson") return Scheme::simpson;
  return Scheme::exact;
}

// Key=value pairs recorded next to every output file; the timestamp lives
// here so the CSV itself stays byte-identical across reruns.
class Manifest {
 public:
  explicit Manifest(std::string command) {
    add("command", std::move(command));
    add("version", simpsym::kVersion);
    add("timestamp", utc_now());
  }
  void add(std::string key, std::string value) {
    lines_.push_back(std::move(key) + "=" + std::move(value));
  }
  void add(std::string key, double value) { add(std::move(key), num17(value)); }
  void add(std::string key, int value) { add(std::move(key), std::to_string(value)); }

  void write_beside(const std::string& csv_path) const {
    std::ofstream out(csv_path + ".manifest");
    for (const auto& line : lines_) {
      out << line << "\n";
    }
  }

 private:
  std::vector<std::string> lines_;
};

// Emit to --out when given (with the manifest beside it), else to stdout.
void deliver(const std::string& csv, const std::string& out_path,
             const Manifest& manifest) {
  if (out_path.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw simpsym::ConfigError("cannot open output file: " + out_path);
  }
  out << csv;
  out.close();
  manifest.write_beside(out_path);
}

struct SimulateArgs {
  std::string scheme = "simpson";
  double mass = 1.0;
  double omega = 6.2831853071795862;
  int periods = 1;
  int steps = 100;
  std::string out;
};

int run_simulate(const SimulateArgs& args) {
  simpsym::harness::ExperimentSpec spec;
  spec.mass = args.mass;
  spec.omega = args.omega;
  spec.period_count = args.periods;
  spec.scheme = parse_scheme(args.scheme);
  spec.initial_state = {args.mass * args.omega, 0.0};

  const auto record = simpsym::harness::run_trajectory(spec, args.steps);

  std::ostringstream csv;
  csv << "t,p,q,H,H_d\n";
  for (std::size_t j = 0; j < record.times.size(); ++j) {
    csv << num17(record.times[j]) << ',' << num17(record.states[j].p) << ','
        << num17(record.states[j].q) << ',' << num17(record.energies_exact[j])
        << ',' << num17(record.energies_discrete[j]) << "\n";
  }

  Manifest manifest("simulate");
  manifest.add("scheme", args.scheme);
  manifest.add("mass", args.mass);
  manifest.add("omega", args.omega);
  manifest.add("periods", args.periods);
  manifest.add("steps", args.steps);
  manifest.add("out", args.out);
  deliver(csv.str(), args.out, manifest);
  return 0;
}

struct ConvergeArgs {
  std::string scheme = "simpson";
  double mass = 1.0;
  double omega = 6.2831853071795862;
  int periods = 1;
  std::string meshes = "10,20,40";
  std::string out;
};

std::vector<int> parse_meshes(const std::string& text) {
  std::vector<int> meshes;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--meshes", "not a comma-separated integer list");
    }
    if (used != item.size()) {
      throw CLI::ValidationError("--meshes", "not a comma-separated integer list");
    }
    meshes.push_back(value);
  }
  if (meshes.empty()) {
    throw CLI::ValidationError("--meshes", "needs at least one mesh");
  }
  return meshes;
}

void append_quantity_rows(std::ostringstream& csv, const std::string& name,
                          const std::vector<int>& mesh_counts,
                          const simpsym::harness::QuantitySeries& series) {
  for (std::size_t i = 0; i < series.errors.size(); ++i) {
    csv << name << ',' << mesh_counts[i] << ',' << num17(series.errors[i]) << ',';
    if (i > 0 && i - 1 < series.orders.size()) {
      csv << num17(series.orders[i - 1]);
    }
    csv << ',' << simpsym::harness::to_string(series.verdict) << "\n";
  }
}

int run_converge(const ConvergeArgs& args) {
  simpsym::harness::ExperimentSpec spec;
  spec.mass = args.mass;
  spec.omega = args.omega;
  spec.period_count = args.periods;
  spec.scheme = parse_scheme(args.scheme);
  spec.initial_state = {args.mass * args.omega, 0.0};
  spec.mesh_counts = parse_meshes(args.meshes);

  const auto report = simpsym::harness::convergence_study(spec);

  std::ostringstream csv;
  csv << "quantity,N,error,order,verdict\n";
  append_quantity_rows(csv, "momentum", report.mesh_counts, report.momentum);
  append_quantity_rows(csv, "state", report.mesh_counts, report.state);
  append_quantity_rows(csv, "energy_H", report.mesh_counts, report.energy_exact);
  append_quantity_rows(csv, "energy_Hd", report.mesh_counts, report.energy_discrete);

  Manifest manifest("converge");
  manifest.add("scheme", args.scheme);
  manifest.add("mass", args.mass);
  manifest.add("omega", args.omega);
  manifest.add("periods", args.periods);
  manifest.add("meshes", args.meshes);
  manifest.add("out", args.out);
  deliver(csv.str(), args.out, manifest);
  return 0;
}

struct StabilityArgs {
  double s_min = 0.1;
  double s_max = 2.8;
  int points = 100;
  std::string out;
};

int run_stability(const StabilityArgs& args) {
  if (args.s_min < 0.0 || args.s_max < args.s_min) {
    throw CLI::ValidationError("--s-min/--s-max", "need 0 <= s-min <= s-max");
  }
  std::ostringstream csv;
  csv << "s,discriminant,root_modulus,stable\n";
  for (int i = 0; i < args.points; ++i) {
    const double s =
        (args.points == 1)
            ? args.s_min
            : args.s_min + (args.s_max - args.s_min) * i / (args.points - 1);
    const auto verdict = simpsym::stability_analysis(s);
    csv << num17(verdict.s) << ',' << num17(verdict.discriminant) << ','
        << num17(verdict.root_modulus) << ',' << (verdict.stable ? 1 : 0) << "\n";
  }

  Manifest manifest("stability");
  manifest.add("s-min", args.s_min);
  manifest.add("s-max", args.s_max);
  manifest.add("points", args.points);
  manifest.add("out", args.out);
  deliver(csv.str(), args.out, manifest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational integrators for the harmonic oscillator"};
  app.set_version_flag("--version", simpsym::kVersion);
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Integrate one trajectory and emit t,p,q,H,H_d rows");
  simulate->add_option("--scheme", sim.scheme, "newmark | simpson | exact")
      ->required()
      ->check(CLI::IsMember({"newmark", "simpson", "exact"}));
  simulate->add_option("--mass", sim.mass, "oscillator mass")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--omega", sim.omega, "angular frequency (default 2*pi)")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--periods", sim.periods, "periods to integrate")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--steps", sim.steps, "mesh count N (h = T/N)")
      ->check(CLI::Range(2, 100000000));
  simulate->add_option("--out", sim.out, "CSV path (stdout when omitted)");

  ConvergeArgs conv;
  CLI::App* converge = app.add_subcommand(
      "converge", "Mesh-refinement error table with orders and verdicts");
  converge->add_option("--scheme", conv.scheme, "newmark | simpson")
      ->required()
      ->check(CLI::IsMember({"newmark", "simpson"}));
  converge->add_option("--mass", conv.mass, "oscillator mass")
      ->check(CLI::PositiveNumber);
  converge->add_option("--omega", conv.omega, "angular frequency (default 2*pi)")
      ->check(CLI::NonNegativeNumber);
  converge->add_option("--periods", conv.periods, "periods to integrate")
      ->check(CLI::PositiveNumber);
  converge->add_option("--meshes", conv.meshes, "comma-separated mesh counts");
  converge->add_option("--out", conv.out, "CSV path (stdout when omitted)");

  StabilityArgs stab;
  CLI::App* stability = app.add_subcommand(
      "stability", "Characteristic-root scan over s = omega*h");
  stability->add_option("--s-min", stab.s_min, "scan start");
  stability->add_option("--s-max", stab.s_max, "scan end");
  stability->add_option("--points", stab.points, "sample count")
      ->check(CLI::Range(1, 100000000));
  stability->add_option("--out", stab.out, "CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (converge->parsed()) return run_converge(conv);
    if (stability->parsed()) return run_stability(stab);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const simpsym::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const simpsym::StabilityWindowError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
