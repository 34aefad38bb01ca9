// finitetrap: command-line front end. Each subcommand builds the data behind
// one of the library's standard plots (spectrum, deformation, steady-state
// amplitudes, number distribution, squeezing sweep, Q and Wigner functions)
// or runs the stationarity verification, and writes CSV or JSON for external
// plotting.

#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "finitetrap/finitetrap.hpp"

namespace {

using finitetrap::format_double;

struct RunConfig {
  std::string command;
  std::vector<double> depths;
  double eta = 0.0;
  double rabi_ratio = 0.0;
  double theta = std::numbers::pi / 4.0;
  std::optional<std::complex<double>> chi_override;
  double half_width = 0.0;  // 0 = auto
  int points = 201;
  std::string out_path;
  std::string format;  // "", "csv", "json"
  bool deformed_quadrature = false;
};

// Depth lists: comma-separated values, each entry either a number or an
// inclusive lo:hi:step range.
std::vector<double> parse_depth_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto c1 = item.find(':');
    if (c1 == std::string::npos) {
      out.push_back(std::stod(item));
      continue;
    }
    const auto c2 = item.find(':', c1 + 1);
    if (c2 == std::string::npos) {
      throw finitetrap::UsageError("depth range must be lo:hi:step, got '" + item + "'");
    }
    const double lo = std::stod(item.substr(0, c1));
    const double hi = std::stod(item.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(item.substr(c2 + 1));
    if (!(step > 0.0)) throw finitetrap::UsageError("depth range step must be positive");
    for (double v = lo; v <= hi + 1e-12 * step; v += step) out.push_back(v);
  }
  if (out.empty()) throw finitetrap::UsageError("empty depth list");
  return out;
}

std::complex<double> parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {std::stod(text), 0.0};
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

double single_depth(const RunConfig& cfg) {
  if (cfg.depths.size() != 1) {
    throw finitetrap::UsageError(cfg.command + " expects exactly one --depth value");
  }
  return cfg.depths.front();
}

std::string effective_format(const RunConfig& cfg) {
  if (!cfg.format.empty()) return cfg.format;
  if (cfg.out_path.size() > 5 && cfg.out_path.substr(cfg.out_path.size() - 5) == ".json")
    return "json";
  return "csv";
}

void write_config_block(finitetrap::JsonWriter& json, const RunConfig& cfg) {
  json.key_object("config");
  if (cfg.depths.size() == 1) {
    json.key_number("depth", cfg.depths.front());
  } else {
    json.begin_array("depth");
    for (double d : cfg.depths) json.element_number(d);
    json.end_array();
  }
  json.key_number("eta", cfg.eta);
  json.key_number("rabi_ratio", cfg.rabi_ratio);
  json.key_number("theta", cfg.theta);
  if (cfg.chi_override) {
    json.key_object("chi_override");
    json.key_number("re", cfg.chi_override->real());
    json.key_number("im", cfg.chi_override->imag());
    json.end_object();
  } else {
    json.key_null("chi_override");
  }
  if (cfg.half_width > 0.0) {
    json.key_number("half_width", cfg.half_width);
  } else {
    json.key_null("half_width");
  }
  json.key_int("points", cfg.points);
  json.key_string("out", cfg.out_path);
  json.key_string("format", effective_format(cfg));
  if (cfg.command == "squeeze") json.key_bool("deformed_quadrature", cfg.deformed_quadrature);
  json.end_object();
}

struct StateBundle {
  finitetrap::TrapParams trap;
  finitetrap::MotionalState state;
  double residual = 0.0;
};

StateBundle make_state(const RunConfig& cfg) {
  const finitetrap::TrapParams trap(single_depth(cfg));
  const finitetrap::DriveParams drive(cfg.eta, cfg.rabi_ratio);
  finitetrap::MotionalState state =
      finitetrap::solve_steady_state(trap, drive, cfg.chi_override);
  double residual = state.recursion_residual;
  if (!cfg.chi_override) {
    residual = finitetrap::stationarity_residual(state, trap, drive);
  }
  return StateBundle{trap, std::move(state), residual};
}

void print_state_summary(const StateBundle& b) {
  std::cout << "dim=" << b.state.dim() << " leakage=" << format_double(b.state.edge_leakage)
            << " residual=" << format_double(b.residual);
  if (b.state.truncation_dominated()) std::cout << " truncation_dominated=1";
  if (b.state.terminated_early) std::cout << " terminated_early=1";
  std::cout << "\n";
}

void emit(const RunConfig& cfg, const std::string& csv, const std::string& json) {
  if (cfg.out_path.empty()) throw finitetrap::UsageError(cfg.command + " requires --out");
  finitetrap::atomic_write(cfg.out_path, effective_format(cfg) == "json" ? json : csv);
}

void state_metadata(finitetrap::JsonWriter& json, const StateBundle& b) {
  json.key_int("n_max", b.trap.n_max());
  json.key_int("dim", b.state.dim());
  json.key_number("leakage", b.state.edge_leakage);
  json.key_number("residual", b.residual);
  json.key_bool("truncation_dominated", b.state.truncation_dominated());
  json.key_bool("terminated_early", b.state.terminated_early);
}

int run_spectrum(const RunConfig& cfg) {
  const finitetrap::TrapParams trap(single_depth(cfg));
  if (trap.shallow()) std::cerr << "warning: shallow trap, a single bound level\n";
  std::vector<std::vector<double>> rows;
  for (int n = 0; n <= trap.n_max(); ++n) {
    rows.push_back({static_cast<double>(n), finitetrap::energy_deformed(n, trap)});
  }
  finitetrap::JsonWriter json;
  json.begin_object().key_string("command", "spectrum");
  write_config_block(json, cfg);
  json.key_int("n_max", trap.n_max()).key_int("dim", trap.n_max() + 1);
  json.key_null("leakage").key_null("residual");
  json.key_object("data");
  json.begin_array("n");
  for (const auto& r : rows) json.element_number(r[0]);
  json.end_array().begin_array("energy");
  for (const auto& r : rows) json.element_number(r[1]);
  json.end_array().end_object().end_object();
  emit(cfg, finitetrap::csv_table("n,energy", rows), json.str());
  std::cout << "n_max=" << trap.n_max() << " dim=" << trap.n_max() + 1 << "\n";
  return 0;
}

int run_deformation(const RunConfig& cfg) {
  const finitetrap::TrapParams trap(single_depth(cfg));
  std::vector<std::vector<double>> rows;
  for (int n = 0; n <= trap.n_max(); ++n) {
    rows.push_back({static_cast<double>(n), finitetrap::deformation_f2(n, trap)});
  }
  finitetrap::JsonWriter json;
  json.begin_object().key_string("command", "deformation");
  write_config_block(json, cfg);
  json.key_int("n_max", trap.n_max()).key_int("dim", trap.n_max() + 1);
  json.key_null("leakage").key_null("residual");
  json.key_object("data");
  json.begin_array("n");
  for (const auto& r : rows) json.element_number(r[0]);
  json.end_array().begin_array("f2");
  for (const auto& r : rows) json.element_number(r[1]);
  json.end_array().end_object().end_object();
  emit(cfg, finitetrap::csv_table("n,f2", rows), json.str());
  std::cout << "n_max=" << trap.n_max() << " dim=" << trap.n_max() + 1 << "\n";
  return 0;
}

int run_steady_state(const RunConfig& cfg) {
  const StateBundle b = make_state(cfg);
  std::vector<std::vector<double>> rows;
  for (int n = 0; n < b.state.dim(); ++n) {
    rows.push_back({static_cast<double>(n), b.state.amps[n].real(), b.state.amps[n].imag()});
  }
  finitetrap::JsonWriter json;
  json.begin_object().key_string("command", "steady-state");
  write_config_block(json, cfg);
  state_metadata(json, b);
  json.key_object("data");
  json.begin_array("n");
  for (const auto& r : rows) json.element_number(r[0]);
  json.end_array().begin_array("re");
  for (const auto& r : rows) json.element_number(r[1]);
  json.end_array().begin_array("im");
  for (const auto& r : rows) json.element_number(r[2]);
  json.end_array().end_object().end_object();
  emit(cfg, finitetrap::csv_table("n,re,im", rows), json.str());
  print_state_summary(b);
  return 0;
}

int run_pn(const RunConfig& cfg) {
  const StateBundle b = make_state(cfg);
  const std::vector<double> p = finitetrap::number_distribution(b.state);
  std::vector<std::vector<double>> rows;
  for (std::size_t n = 0; n < p.size(); ++n) rows.push_back({static_cast<double>(n), p[n]});
  finitetrap::JsonWriter json;
  json.begin_object().key_string("command", "pn");
  write_config_block(json, cfg);
  state_metadata(json, b);
  json.key_object("data");
  json.begin_array("n");
  for (const auto& r : rows) json.element_number(r[0]);
  json.end_array().begin_array("p");
  for (const auto& r : rows) json.element_number(r[1]);
  json.end_array().end_object().end_object();
  emit(cfg, finitetrap::csv_table("n,p", rows), json.str());
  print_state_summary(b);
  return 0;
}

int run_squeeze(const RunConfig& cfg) {
  const finitetrap::DriveParams drive(cfg.eta, cfg.rabi_ratio);
  const auto convention = cfg.deformed_quadrature ? finitetrap::LadderConvention::deformed
                                                  : finitetrap::LadderConvention::bare;
  const finitetrap::SqueezeScan scan =
      finitetrap::squeezing_scan(cfg.depths, drive, cfg.theta, convention);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < scan.depths.size(); ++i) {
    rows.push_back({scan.depths[i], scan.s_values[i]});
  }
  finitetrap::JsonWriter json;
  json.begin_object().key_string("command", "squeeze");
  write_config_block(json, cfg);
  json.key_null("n_max").key_int("dim", static_cast<long long>(scan.depths.size()));
  json.key_null("leakage").key_null("residual");
  json.begin_array("failures");
  for (const auto& [depth, name] : scan.failures) {
    json.begin_object();
    json.key_number("depth", depth);
    json.key_string("error", name);
    json.end_object();
  }
  json.end_array();
  json.key_object("data");
  json.begin_array("N");
  for (const auto& r : rows) json.element_number(r[0]);
  json.end_array().begin_array("S");
  for (const auto& r : rows) json.element_number(r[1]);
  json.end_array().end_object().end_object();
  emit(cfg, finitetrap::csv_table("N,S", rows), json.str());
  std::cout << "points=" << scan.depths.size() << " failures=" << scan.failures.size() << "\n";
  return 0;
}

int run_grid(const RunConfig& cfg, finitetrap::GridKind kind) {
  const StateBundle b = make_state(cfg);
  finitetrap::PhaseSpaceGrid grid =
      cfg.half_width > 0.0
          ? finitetrap::PhaseSpaceGrid::square(cfg.half_width, cfg.points, kind)
          : finitetrap::default_grid(b.state, kind, cfg.points);
  if (kind == finitetrap::GridKind::q_function) {
    finitetrap::q_function(b.state, grid);
  } else {
    finitetrap::wigner_function(b.state, grid);
  }
  if (grid.coverage_warning) std::cerr << "warning: grid may not cover the state\n";

  std::string csv = "re,im,value\n";
  for (int i = 0; i < grid.n_re; ++i) {
    for (int j = 0; j < grid.n_im; ++j) {
      csv += format_double(grid.re_at(i));
      csv += ",";
      csv += format_double(grid.im_at(j));
      csv += ",";
      csv += format_double(grid.at(i, j));
      csv += "\n";
    }
  }

  finitetrap::JsonWriter json;
  json.begin_object().key_string("command", cfg.command);
  write_config_block(json, cfg);
  state_metadata(json, b);
  json.key_object("grid");
  json.key_number("re_min", grid.re_min).key_number("re_max", grid.re_max);
  json.key_number("im_min", grid.im_min).key_number("im_max", grid.im_max);
  json.key_int("n_re", grid.n_re).key_int("n_im", grid.n_im);
  json.key_bool("coverage_warning", grid.coverage_warning);
  if (kind == finitetrap::GridKind::wigner) json.key_number("max_leakage", grid.max_leakage);
  json.end_object();
  json.key_object("data");
  json.begin_array("re");
  for (int i = 0; i < grid.n_re; ++i)
    for (int j = 0; j < grid.n_im; ++j) json.element_number(grid.re_at(i));
  json.end_array().begin_array("im");
  for (int i = 0; i < grid.n_re; ++i)
    for (int j = 0; j < grid.n_im; ++j) json.element_number(grid.im_at(j));
  json.end_array().begin_array("value");
  for (int i = 0; i < grid.n_re; ++i)
    for (int j = 0; j < grid.n_im; ++j) json.element_number(grid.at(i, j));
  json.end_array().end_object().end_object();
  emit(cfg, csv, json.str());
  print_state_summary(b);
  return 0;
}

int run_verify(const RunConfig& cfg) {
  const finitetrap::TrapParams trap(single_depth(cfg));
  const finitetrap::DriveParams drive(cfg.eta, cfg.rabi_ratio);
  const finitetrap::MotionalState state = finitetrap::solve_steady_state(trap, drive);
  const double residual = finitetrap::stationarity_residual(state, trap, drive);
  std::cout << "dim=" << state.dim() << " leakage=" << format_double(state.edge_leakage)
            << " residual=" << format_double(residual) << " tolerance=1e-10\n";
  if (residual > 1e-10) {
    std::cerr << "error: stationarity residual above tolerance\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single trapped ion in a finite-range trap: steady-state data generator"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string depth_text;
  std::string chi_text;

  auto add_common = [&](CLI::App* sub, bool needs_drive, bool needs_out) {
    sub->add_option("--depth", depth_text, "trap depth N; list a,b,c and ranges lo:hi:step allowed")
        ->required();
    if (needs_drive) {
      sub->add_option("--eta", cfg.eta, "Lamb-Dicke parameter")->required();
      sub->add_option("--rabi-ratio", cfg.rabi_ratio, "Omega_0 / Omega_1")->required();
    }
    if (needs_out) {
      sub->add_option("--out", cfg.out_path, "output file path")->required();
      sub->add_option("--format", cfg.format, "csv or json (default: by file extension)")
          ->check(CLI::IsMember({"csv", "json"}));
    }
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "bound-level energies (units hbar omega)");
  add_common(spectrum, false, true);
  CLI::App* deformation = app.add_subcommand("deformation", "deformation f^2(n) over the spectrum");
  add_common(deformation, false, true);

  CLI::App* steady = app.add_subcommand("steady-state", "steady-state Fock amplitudes");
  add_common(steady, true, true);
  steady->add_option("--chi", chi_text, "override the eigenvalue chi as re,im");

  CLI::App* pn = app.add_subcommand("pn", "vibrational number distribution p(n)");
  add_common(pn, true, true);
  pn->add_option("--chi", chi_text, "override the eigenvalue chi as re,im");

  CLI::App* squeeze = app.add_subcommand("squeeze", "squeezing S(theta) vs trap depth");
  add_common(squeeze, true, true);
  squeeze->add_option("--theta", cfg.theta, "quadrature phase (default pi/4)");
  squeeze->add_flag("--deformed-quadrature", cfg.deformed_quadrature,
                    "use the deformed ladder operators in the quadrature");

  CLI::App* qfunc = app.add_subcommand("qfunc", "Husimi Q function on a phase-space grid");
  add_common(qfunc, true, true);
  CLI::App* wigner = app.add_subcommand("wigner", "Wigner function on a phase-space grid");
  add_common(wigner, true, true);
  for (CLI::App* sub : {qfunc, wigner}) {
    sub->add_option("--chi", chi_text, "override the eigenvalue chi as re,im");
    sub->add_option("--half-width", cfg.half_width, "grid half width (default: auto from <n>)");
    sub->add_option("--points", cfg.points, "grid points per axis (default 201)")
        ->check(CLI::PositiveNumber);
  }

  CLI::App* verify = app.add_subcommand("verify", "check H_I annihilates the steady state");
  add_common(verify, true, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.depths = parse_depth_list(depth_text);
    if (!chi_text.empty()) cfg.chi_override = parse_complex(chi_text);

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (sub == spectrum) return run_spectrum(cfg);
    if (sub == deformation) return run_deformation(cfg);
    if (sub == steady) return run_steady_state(cfg);
    if (sub == pn) return run_pn(cfg);
    if (sub == squeeze) return run_squeeze(cfg);
    if (sub == qfunc) return run_grid(cfg, finitetrap::GridKind::q_function);
    if (sub == wigner) return run_grid(cfg, finitetrap::GridKind::wigner);
    if (sub == verify) return run_verify(cfg);
    return 2;
  } catch (const finitetrap::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const finitetrap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
