#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cohsteer/closedform.hpp"
#include "cohsteer/report.hpp"

namespace fs = std::filesystem;
using namespace cohsteer;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_thetas(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ConfigError("bad theta value '" + tok + "'");
    }
  }
  if (out.empty()) throw ConfigError("theta list is empty");
  return out;
}

std::vector<CoherenceMeasure> parse_measures(const std::string& spec) {
  std::vector<CoherenceMeasure> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    bool found = false;
    for (CoherenceMeasure m : kAllMeasures) {
      if (tok == measure_name(m)) {
        out.push_back(m);
        found = true;
        break;
      }
    }
    if (!found) throw ConfigError("unknown measure '" + tok + "' (expected l1c, rec or sic)");
  }
  if (out.empty()) throw ConfigError("measure list is empty");
  return out;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known{"thetas",    "counts_per_setting",
                                           "visibility", "dephasing",
                                           "bootstrap_resamples", "seed",
                                           "poisson_noise"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw ConfigError("unknown config key: " + it.key());
  }

  ExperimentConfig cfg;
  try {
    if (j.contains("thetas")) cfg.thetas_deg = j["thetas"].get<std::vector<double>>();
    if (j.contains("counts_per_setting"))
      cfg.counts_per_setting = j["counts_per_setting"].get<int>();
    if (j.contains("visibility")) cfg.visibility = j["visibility"].get<double>();
    if (j.contains("dephasing")) cfg.dephasing = j["dephasing"].get<double>();
    if (j.contains("bootstrap_resamples"))
      cfg.bootstrap_resamples = j["bootstrap_resamples"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("poisson_noise")) cfg.poisson_noise = j["poisson_noise"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  try {
    validate(cfg);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory " + dir + ": " + ec.message());
}

bool report_check(const char* name, bool ok, const std::string& detail = "") {
  std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name, detail.empty() ? "" : ": ",
              detail.c_str());
  return ok;
}

int run_theory(const std::vector<double>& thetas, const std::vector<CoherenceMeasure>& measures,
               const std::string& out_dir) {
  const auto rows = build_theory_rows(thetas, measures);
  std::printf("%10s %8s %10s %10s %10s %10s\n", "theta_deg", "measure", "S0", "S12/2", "S012/3",
              "bound");
  for (const TheoryRow& r : rows) {
    std::printf("%10.4f %8s %10.4f %10.4f %10.4f %10.4f%s\n", r.theta_deg,
                measure_name(r.measure), r.s0, r.s12_half, r.s012_third, r.bound,
                r.violates_two_setting ? "  two-setting violation" : "");
  }
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    write_theory_csv(rows, out_dir + "/theory.csv");
    ensure_dir(out_dir + "/plotdata");
    write_plotdata(out_dir + "/plotdata");
    std::printf("wrote %s/theory.csv and %s/plotdata/\n", out_dir.c_str(), out_dir.c_str());
  }
  return 0;
}

int run_simulate(const ExperimentConfig& cfg, const std::string& out_dir) {
  const SweepDataset ds = run_virtual_experiment(cfg);
  ensure_dir(out_dir);
  write_tables_csv(ds, out_dir + "/tables.csv");
  write_sigeur_csv(ds, out_dir + "/sigeur.csv");
  write_report_json(ds, out_dir + "/report.json");
  ensure_dir(out_dir + "/plotdata");
  write_plotdata(out_dir + "/plotdata");

  int two = 0, one = 0, sig = 0;
  for (const CriterionRow& r : ds.rows) {
    two += r.violates_two_setting;
    one += r.violates_one_setting;
  }
  for (const SigeurRow& r : ds.sigeur_rows) sig += r.violated;
  std::printf("simulated %zu states: %d two-setting violations, %d one-setting violations, "
              "%d entropic violations\n",
              ds.config.thetas_deg.size(), two, one, sig);
  std::printf("wrote tables.csv, sigeur.csv, report.json, plotdata/ under %s\n", out_dir.c_str());
  return 0;
}

int run_sigeur(const std::vector<double>& thetas, double n, std::uint64_t seed,
               const std::string& out_dir) {
  ExperimentConfig cfg;
  cfg.thetas_deg = thetas;
  cfg.seed = seed;
  validate(cfg);

  // The sweep measures the n = 2 inequality; the theory column below follows
  // the requested n.
  const SweepDataset ds = run_virtual_experiment(cfg);
  const double bound = sigeur_bound(n, 3, 2);
  std::printf("%10s %12s %14s %10s %10s\n", "theta_deg", "lhs_theory", "lhs_sim", "err", "bound");
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double theory = sigeur_lhs(bell_like(deg2rad(thetas[i])), n);
    const SigeurRow& r = ds.sigeur_rows[i];
    std::printf("%10.4f %12.4f %14.4f %10.4f %10.4f%s\n", thetas[i], theory, r.lhs_sim, r.lhs_err,
                bound, r.lhs_sim < bound - 1e-9 ? "  violated" : "");
  }
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    write_sigeur_csv(ds, out_dir + "/sigeur.csv");
    std::printf("wrote %s/sigeur.csv\n", out_dir.c_str());
  }
  return 0;
}

int run_verify(int samples, std::uint64_t seed, bool flip_convention) {
  bool all_ok = true;

  {
    bool ok = true;
    std::string detail;
    for (const LocalMeasureSetting& s : pmo_table()) {
      try {
        const PmoLabel got = verify_pmo_table(s);
        if (got.axis != s.label.axis || got.outcome != s.label.outcome) ok = false;
      } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
      }
    }
    all_ok &= report_check("local-measurement wave-plate table (6 settings)", ok, detail);
  }

  {
    JonesConvention conv = kVerifiedConvention;
    if (flip_convention) conv.tomo_qwp_from_vertical = !conv.tomo_qwp_from_vertical;
    bool ok = true;
    std::string detail;
    for (const TomoSetting& s : tomography_table()) {
      try {
        const PmoLabel got = verify_tomography_table(s.hwp_deg, s.qwp_deg, conv);
        if (got.axis != s.label.axis || got.outcome != s.label.outcome) {
          ok = false;
          detail = std::string("setting for ") + axis_name(s.label.axis) + "/" +
                   std::to_string(s.label.outcome) + " maps to " + axis_name(got.axis) + "/" +
                   std::to_string(got.outcome);
        }
      } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
      }
    }
    all_ok &= report_check("analysis wave-plate table (6 settings)", ok, detail);
  }

  {
    const std::vector<double> reference_thetas{0, 10, 20, 30, 40, 45, 50, 60, 70, 80, 90};
    double worst = 0.0;
    for (double theta_deg : reference_thetas) {
      const double theta = deg2rad(theta_deg);
      const DensityMatrix rho = bell_like(theta);
      for (CoherenceMeasure m : kAllMeasures) {
        worst = std::max(worst, std::abs(one_setting_value(rho, m) - closedform::s0(theta, m)));
        worst = std::max(worst,
                         std::abs(two_setting_value(rho, m) - closedform::s12_half(theta, m)));
        worst = std::max(worst,
                         std::abs(three_setting_value(rho, m) - closedform::s012_third(theta, m)));
      }
      worst = std::max(worst, std::abs(sigeur_lhs(rho, 2.0) - closedform::sigeur(theta)));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max deviation %.2e", worst);
    all_ok &= report_check("closed-form oracle suite (11 angles)", worst <= 1e-9, buf);
  }

  {
    int bound_failures = 0;
    int complement_failures = 0;
    const auto check = [&](const SteeringReport& rep) {
      for (const SteeringCriterion& c : rep.criteria) {
        const double ceiling = three_setting_ceiling(c.measure);
        if (c.s012_third > ceiling + 1e-9) ++bound_failures;
        if (c.s12_half > ceiling && c.s0 > ceiling) ++complement_failures;
      }
    };
    RandomStream rng(seed);
    for (int i = 0; i < samples; ++i) {
      check(steering_report(random_density_matrix(rng, 4, i % 4 + 1)));
    }
    for (int d = 0; d <= 90; ++d) {
      check(steering_report(bell_like(deg2rad(d))));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d samples + 1-degree grid, %d bound / %d complementarity failures",
                  samples, bound_failures, complement_failures);
    all_ok &= report_check("three-setting bound and complementarity",
                           bound_failures == 0 && complement_failures == 0, buf);
  }

  return all_ok ? 0 : 1;
}

int run_report(const std::string& out_dir) {
  const auto rows = read_tables_csv(out_dir + "/tables.csv");
  const auto sig = read_sigeur_csv(out_dir + "/sigeur.csv");
  write_summary_json(rows, sig, out_dir + "/report.json");

  for (CoherenceMeasure m : kAllMeasures) {
    std::vector<double> violating;
    for (const CriterionRow& r : rows) {
      if (r.measure == m && r.violates_two_setting) violating.push_back(r.theta_deg);
    }
    std::printf("%s: %zu two-setting violations", measure_name(m), violating.size());
    for (double t : violating) std::printf(" %g", t);
    std::printf("\n");
  }
  std::size_t sig_count = 0;
  for (const SigeurRow& r : sig) sig_count += r.violated;
  std::printf("entropic inequality: %zu violations\n", sig_count);
  std::printf("wrote %s/report.json\n", out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence-based steering criteria for two-qubit states, with a simulated "
               "photonic measurement pipeline"};
  app.require_subcommand(1);

  std::string thetas_spec = "0,10,20,30,40,45,50,60,70,80,90";
  std::string measures_spec = "l1c,rec,sic";
  std::string config_path;
  std::string theory_out;
  std::string simulate_out = "out";
  std::string sigeur_out;
  std::string report_out = "out";
  std::uint64_t seed = 1;
  bool seed_given = false;
  double sigeur_n = 2.0;
  int samples = 10000;
  bool flip_convention = false;

  CLI::App* theory = app.add_subcommand("theory", "Exact criterion values for Bell-like states");
  theory->add_option("--thetas", thetas_spec, "Comma-separated angles in degrees");
  theory->add_option("--measures", measures_spec, "Subset of l1c,rec,sic");
  theory->add_option("--out", theory_out, "Output directory for theory.csv and plotdata/");

  CLI::App* simulate = app.add_subcommand("simulate", "Run the virtual experiment sweep");
  simulate->add_option("--config", config_path, "JSON experiment config")->required();
  simulate->add_option("--seed", seed, "Override the config seed")->each([&](const std::string&) {
    seed_given = true;
  });
  simulate->add_option("--out", simulate_out, "Output directory");

  CLI::App* sigeur = app.add_subcommand("sigeur", "Entropic steering inequality table");
  sigeur->add_option("--thetas", thetas_spec, "Comma-separated angles in degrees");
  sigeur->add_option("--n", sigeur_n, "Entropic order in (0, 2], not 1");
  sigeur->add_option("--seed", seed, "Simulation seed");
  sigeur->add_option("--out", sigeur_out, "Optional output directory for sigeur.csv");

  CLI::App* verify = app.add_subcommand("verify", "Wave-plate, oracle and bound verification");
  verify->add_option("--samples", samples, "Random-state sample size for the bound check");
  verify->add_option("--seed", seed, "Sample seed");
  verify->add_flag("--flip-convention", flip_convention,
                   "Flip the analysis QWP axis reference (should break the table check)");

  CLI::App* report = app.add_subcommand("report", "Merge previously written outputs");
  report->add_option("--out", report_out, "Directory holding tables.csv and sigeur.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (theory->parsed()) {
      return run_theory(parse_thetas(thetas_spec), parse_measures(measures_spec), theory_out);
    }
    if (simulate->parsed()) {
      ExperimentConfig cfg = load_config(config_path);
      if (seed_given) cfg.seed = seed;
      return run_simulate(cfg, simulate_out);
    }
    if (sigeur->parsed()) {
      return run_sigeur(parse_thetas(thetas_spec), sigeur_n, seed, sigeur_out);
    }
    if (verify->parsed()) {
      return run_verify(samples, seed, flip_convention);
    }
    if (report->parsed()) {
      return run_report(report_out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
