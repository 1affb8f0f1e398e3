#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dhk/errors.hpp"
#include "dhk/kink.hpp"
#include "dhk/potential.hpp"
#include "dhk/seeds.hpp"
#include "dhk/transmutation.hpp"
#include "dhk/validation.hpp"
#include "dhk/zeta.hpp"

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Range {
  double min = 0.0, max = 0.0, step = 1.0;

  std::vector<double> values() const {
    if (!(step > 0.0)) throw dhk::DomainError("range step must be positive");
    if (max < min) throw dhk::DomainError("range max is below min");
    const long long n =
        static_cast<long long>(std::floor((max - min) / step + 1e-9));
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n) + 1);
    for (long long i = 0; i <= n; ++i) out.push_back(min + step * static_cast<double>(i));
    return out;
  }
};

Range parse_range(const std::string& text) {
  Range r;
  const size_t a = text.find(':');
  const size_t b = text.find(':', a == std::string::npos ? a : a + 1);
  if (a == std::string::npos || b == std::string::npos)
    throw dhk::DomainError("range '" + text + "' is not min:max:step");
  size_t used = 0;
  r.min = std::stod(text.substr(0, a), &used);
  r.max = std::stod(text.substr(a + 1, b - a - 1));
  r.step = std::stod(text.substr(b + 1));
  return r;
}

dhk::DressingChain parse_chain(const std::string& text) {
  std::vector<dhk::SeedFunction> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw dhk::DomainError("chain entry '" + item + "' is not parity:b");
    const std::string parity = item.substr(0, colon);
    const double b = std::stod(item.substr(colon + 1));
    if (parity == "cosh")
      seeds.emplace_back(dhk::Parity::Even, b);
    else if (parity == "sinh")
      seeds.emplace_back(dhk::Parity::Odd, b);
    else
      throw dhk::DomainError("chain parity must be cosh or sinh, got '" +
                             parity + "'");
  }
  if (seeds.empty()) throw dhk::DomainError("chain is empty");
  return dhk::DressingChain(std::move(seeds));
}

struct Options {
  double mass = 1.0;
  std::optional<double> shift;
  std::string variant = "exp-corrected";
  std::string chain;       // empty means the kink preset
  std::string preset = "kink";
  std::string method = "closed";  // kernel: closed | dressed (kink preset only)
  double scale = 1.0;             // M in the zeta prefactor
  std::string x_range = "-10:10:0.25";
  std::string y_range = "0:0:1";
  std::string tau_range = "0.1:1:0.45";
  std::string t_range = "0.1:5:0.245";
  std::string s_range = "0.25:2:0.25";
  std::string output;
  std::string format = "csv";

  double effective_shift() const {
    return shift ? *shift : 4.0 * mass * mass;
  }
  dhk::KernelVariant kernel_variant() const {
    return variant == "as-printed" ? dhk::KernelVariant::AsPrinted
                                   : dhk::KernelVariant::ExpCorrected;
  }
  bool custom_chain() const { return !chain.empty(); }
  dhk::DressingChain build_chain() const {
    return custom_chain() ? parse_chain(chain) : dhk::DressingChain::kink(mass);
  }
};

using ConfigEcho = std::map<std::string, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::ostream& open_sink(const Options& opt, std::ofstream& file) {
  if (opt.output.empty()) return std::cout;
  file.open(opt.output);
  if (!file) throw dhk::DomainError("cannot open output file " + opt.output);
  return file;
}

void emit_table(const Table& table, const ConfigEcho& config,
                const Options& opt) {
  std::ofstream file;
  std::ostream& os = open_sink(opt, file);
  if (opt.format == "json") {
    nlohmann::json j;
    j["config"] = config;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    os << j.dump(2) << "\n";
    return;
  }
  os << "#";
  for (const auto& [key, value] : config) os << " " << key << "=" << value;
  os << "\n# columns:";
  for (size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : " ") << table.columns[i];
  os << "\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << fmt17(row[i]);
    os << "\n";
  }
}

ConfigEcho base_config(const char* command, const Options& opt) {
  ConfigEcho c;
  c["command"] = command;
  c["m"] = fmt17(opt.mass);
  c["chain"] = opt.custom_chain() ? opt.chain : "preset:kink";
  c["format"] = opt.format;
  return c;
}

int run_potential(const Options& opt) {
  const dhk::PotentialField u(opt.build_chain());
  Table t;
  t.columns = {"x", "u"};
  for (double x : parse_range(opt.x_range).values()) t.rows.push_back({x, u(x)});
  ConfigEcho c = base_config("potential", opt);
  c["x"] = opt.x_range;
  emit_table(t, c, opt);
  return 0;
}

int run_kernel(const Options& opt) {
  dhk::HeatKernel kernel = dhk::HeatKernel::free();
  if (opt.custom_chain() || opt.method == "dressed")
    kernel = dhk::HeatKernel::dressed(opt.build_chain());
  else
    kernel = dhk::HeatKernel::closed_form_kink(opt.mass, opt.kernel_variant());
  Table t;
  t.columns = {"tau", "x", "y", "rho"};
  for (double tau : parse_range(opt.tau_range).values())
    for (double x : parse_range(opt.x_range).values())
      for (double y : parse_range(opt.y_range).values())
        t.rows.push_back({tau, x, y, kernel.value(tau, x, y)});
  ConfigEcho c = base_config("kernel", opt);
  c["tau"] = opt.tau_range;
  c["x"] = opt.x_range;
  c["y"] = opt.y_range;
  c["variant"] = opt.variant;
  c["method"] = opt.custom_chain() ? "dressed" : opt.method;
  emit_table(t, c, opt);
  return 0;
}

dhk::HeatTrace build_trace(const Options& opt) {
  if (opt.custom_chain())
    return dhk::HeatTrace::numeric_diagonal(
        dhk::HeatKernel::dressed(opt.build_chain()), opt.effective_shift());
  return dhk::HeatTrace::closed_form(opt.mass, opt.effective_shift(),
                                     opt.kernel_variant());
}

int run_trace(const Options& opt) {
  const dhk::HeatTrace trace = build_trace(opt);
  Table t;
  t.columns = {"t", "gamma"};
  for (double time : parse_range(opt.t_range).values())
    t.rows.push_back({time, trace(time)});
  ConfigEcho c = base_config("trace", opt);
  c["shift"] = fmt17(opt.effective_shift());
  c["variant"] = opt.variant;
  c["t"] = opt.t_range;
  emit_table(t, c, opt);
  return 0;
}

int run_zeta(const Options& opt) {
  const dhk::HeatTrace trace = build_trace(opt);
  Table t;
  t.columns = {"s", "zeta"};
  for (double s : parse_range(opt.s_range).values())
    t.rows.push_back({s, dhk::zeta_function(trace, s, opt.scale)});
  ConfigEcho c = base_config("zeta", opt);
  c["shift"] = fmt17(opt.effective_shift());
  c["variant"] = opt.variant;
  c["M"] = fmt17(opt.scale);
  c["s"] = opt.s_range;
  emit_table(t, c, opt);
  return 0;
}

int run_correction(const Options& opt) {
  const dhk::ZetaResult r =
      dhk::quantum_correction(build_trace(opt), opt.scale);
  Table t;
  t.columns = {"zeta0", "zeta_prime0", "s_q", "mass_scale", "error_estimate"};
  t.rows.push_back({r.zeta0, r.zeta_prime0, r.s_q, r.mass_scale,
                    r.error_estimate});
  ConfigEcho c = base_config("correction", opt);
  c["shift"] = fmt17(opt.effective_shift());
  c["variant"] = opt.variant;
  c["M"] = fmt17(opt.scale);
  emit_table(t, c, opt);
  return 0;
}

int run_validate(const Options& opt) {
  const auto results = dhk::run_validation_suite(opt.mass);
  for (const auto& r : results)
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " ("
              << fmt17(r.seconds) << "s)\n    " << r.detail << "\n";
  const bool ok = dhk::all_passed(results);
  std::cout << (ok ? "validation passed" : "validation FAILED") << " ("
            << results.size() << " checks)\n";
  if (!opt.output.empty()) {
    std::ofstream file;
    std::ostream& os = open_sink(opt, file);
    if (opt.format == "json") {
      nlohmann::json j;
      j["config"] = base_config("validate", opt);
      for (const auto& r : results)
        j["checks"].push_back(
            {{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      j["passed"] = ok;
      os << j.dump(2) << "\n";
    } else {
      os << "# command=validate m=" << fmt17(opt.mass) << "\n# columns: name,passed\n";
      for (const auto& r : results)
        os << r.name << "," << (r.passed ? 1 : 0) << "\n";
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Darboux-dressed heat kernels, traces, and one-loop corrections"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the shared options after the subcommand name

  Options opt;
  app.add_option("--m", opt.mass, "mass parameter")->check(CLI::PositiveNumber);
  app.add_option("--shift", opt.shift,
                 "spectral shift in the trace weight (default 4 m^2)");
  app.add_option("--variant", opt.variant, "closed-form kernel variant")
      ->check(CLI::IsMember({"exp-corrected", "as-printed"}));
  auto* chain_opt =
      app.add_option("--chain", opt.chain, "seed list, e.g. cosh:1,sinh:2");
  app.add_option("--preset", opt.preset, "named chain preset")
      ->check(CLI::IsMember({"kink"}))
      ->excludes(chain_opt);
  app.add_option("--M", opt.scale, "zeta mass scale M")
      ->check(CLI::PositiveNumber);
  app.add_option("--x", opt.x_range, "x range min:max:step");
  app.add_option("--y", opt.y_range, "y range min:max:step");
  app.add_option("--tau", opt.tau_range, "tau range min:max:step");
  app.add_option("--t", opt.t_range, "trace time range min:max:step");
  app.add_option("--s", opt.s_range, "zeta argument range min:max:step");
  app.add_option("--output", opt.output, "write output to this file");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--method", opt.method,
                 "kernel construction for the kink preset")
      ->check(CLI::IsMember({"closed", "dressed"}));

  auto* cmd_potential = app.add_subcommand("potential", "tabulate u[N](x)");
  auto* cmd_kernel = app.add_subcommand("kernel", "tabulate rho(tau, x, y)");
  auto* cmd_trace = app.add_subcommand("trace", "tabulate the subtracted trace");
  auto* cmd_zeta = app.add_subcommand("zeta", "tabulate zeta(s)");
  auto* cmd_correction =
      app.add_subcommand("correction", "one-loop correction record");
  auto* cmd_validate =
      app.add_subcommand("validate", "run the full oracle and invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_potential->parsed()) return run_potential(opt);
    if (cmd_kernel->parsed()) return run_kernel(opt);
    if (cmd_trace->parsed()) return run_trace(opt);
    if (cmd_zeta->parsed()) return run_zeta(opt);
    if (cmd_correction->parsed()) return run_correction(opt);
    if (cmd_validate->parsed()) return run_validate(opt);
  } catch (const std::invalid_argument& e) {  // bad flag values, bad domains
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {  // quadrature/convergence/stability
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
