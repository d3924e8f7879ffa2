#include "cohsteer/report.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cohsteer {

namespace {

using nlohmann::json;

const char* bool_str(bool b) { return b ? "true" : "false"; }

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::runtime_error("csv: bad boolean field '" + s + "'");
}

CoherenceMeasure parse_measure(const std::string& s) {
  for (CoherenceMeasure m : kAllMeasures) {
    if (s == measure_name(m)) return m;
  }
  throw std::runtime_error("csv: unknown measure '" + s + "'");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);  // no platform newline translation
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  return f;
}

json summary_json(const std::vector<CriterionRow>& rows,
                  const std::vector<SigeurRow>& sigeur_rows) {
  json two = json::object();
  json one = json::object();
  for (CoherenceMeasure m : kAllMeasures) {
    two[measure_name(m)] = json::array();
    one[measure_name(m)] = json::array();
  }
  for (const CriterionRow& r : rows) {
    if (r.violates_two_setting) two[measure_name(r.measure)].push_back(r.theta_deg);
    if (r.violates_one_setting) one[measure_name(r.measure)].push_back(r.theta_deg);
  }
  json sig = json::array();
  for (const SigeurRow& r : sigeur_rows) {
    if (r.violated) sig.push_back(r.theta_deg);
  }
  return json{{"two_setting_violations", two},
              {"one_setting_violations", one},
              {"sigeur_violations", sig}};
}

json rows_json(const std::vector<CriterionRow>& rows) {
  json arr = json::array();
  for (const CriterionRow& r : rows) {
    arr.push_back({{"theta_deg", r.theta_deg},
                   {"measure", measure_name(r.measure)},
                   {"s0_theory", r.s0_theory},
                   {"s12half_theory", r.s12half_theory},
                   {"s012third_theory", r.s012third_theory},
                   {"s0_sim", r.s0_sim},
                   {"s0_err", r.s0_err},
                   {"s12half_sim", r.s12half_sim},
                   {"s12half_err", r.s12half_err},
                   {"s012third_sim", r.s012third_sim},
                   {"s012third_err", r.s012third_err},
                   {"bound", r.bound},
                   {"violates_two_setting", r.violates_two_setting},
                   {"violates_one_setting", r.violates_one_setting}});
  }
  return arr;
}

json sigeur_json(const std::vector<SigeurRow>& rows) {
  json arr = json::array();
  for (const SigeurRow& r : rows) {
    arr.push_back({{"theta_deg", r.theta_deg},
                   {"lhs_theory", r.lhs_theory},
                   {"lhs_sim", r.lhs_sim},
                   {"lhs_err", r.lhs_err},
                   {"bound", r.bound},
                   {"violated", r.violated}});
  }
  return arr;
}

}  // namespace

const char* const kTablesCsvHeader =
    "theta_deg,measure,s0_theory,s12half_theory,s012third_theory,s0_sim,s0_err,"
    "s12half_sim,s12half_err,s012third_sim,s012third_err,bound,"
    "violates_two_setting,violates_one_setting";

const char* const kSigeurCsvHeader = "theta_deg,lhs_theory,lhs_sim,lhs_err,bound,violated";

const char* const kTheoryCsvHeader =
    "theta_deg,measure,s0_theory,s12half_theory,s012third_theory,bound,"
    "violates_two_setting,violates_one_setting";

std::string csv_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  if (std::strcmp(buf, "-0.0000") == 0) return "0.0000";
  return buf;
}

std::vector<TheoryRow> build_theory_rows(const std::vector<double>& thetas_deg,
                                         const std::vector<CoherenceMeasure>& measures) {
  std::vector<TheoryRow> rows;
  for (double theta_deg : thetas_deg) {
    const SteeringReport rep = steering_report(bell_like(deg2rad(theta_deg)));
    for (CoherenceMeasure m : measures) {
      const SteeringCriterion& c = rep.criteria[static_cast<int>(m)];
      TheoryRow row{};
      row.theta_deg = theta_deg;
      row.measure = m;
      row.s0 = c.s0;
      row.s12_half = c.s12_half;
      row.s012_third = c.s012_third;
      row.bound = c.bound;
      row.violates_two_setting = rounded_verdict(c.s12_half, c.bound);
      row.violates_one_setting = rounded_verdict(c.s0, c.bound);
      rows.push_back(row);
    }
  }
  return rows;
}

void write_theory_csv(const std::vector<TheoryRow>& rows, const std::string& path) {
  std::ofstream f = open_out(path);
  f << kTheoryCsvHeader << "\n";
  for (const TheoryRow& r : rows) {
    f << csv_num(r.theta_deg) << ',' << measure_name(r.measure) << ',' << csv_num(r.s0) << ','
      << csv_num(r.s12_half) << ',' << csv_num(r.s012_third) << ',' << csv_num(r.bound) << ','
      << bool_str(r.violates_two_setting) << ',' << bool_str(r.violates_one_setting) << "\n";
  }
}

void write_tables_csv(const SweepDataset& ds, const std::string& path) {
  std::ofstream f = open_out(path);
  f << kTablesCsvHeader << "\n";
  for (const CriterionRow& r : ds.rows) {
    f << csv_num(r.theta_deg) << ',' << measure_name(r.measure) << ',' << csv_num(r.s0_theory)
      << ',' << csv_num(r.s12half_theory) << ',' << csv_num(r.s012third_theory) << ','
      << csv_num(r.s0_sim) << ',' << csv_num(r.s0_err) << ',' << csv_num(r.s12half_sim) << ','
      << csv_num(r.s12half_err) << ',' << csv_num(r.s012third_sim) << ','
      << csv_num(r.s012third_err) << ',' << csv_num(r.bound) << ','
      << bool_str(r.violates_two_setting) << ',' << bool_str(r.violates_one_setting) << "\n";
  }
}

void write_sigeur_csv(const SweepDataset& ds, const std::string& path) {
  std::ofstream f = open_out(path);
  f << kSigeurCsvHeader << "\n";
  for (const SigeurRow& r : ds.sigeur_rows) {
    f << csv_num(r.theta_deg) << ',' << csv_num(r.lhs_theory) << ',' << csv_num(r.lhs_sim) << ','
      << csv_num(r.lhs_err) << ',' << csv_num(r.bound) << ',' << bool_str(r.violated) << "\n";
  }
}

void write_report_json(const SweepDataset& ds, const std::string& path) {
  json j;
  j["config"] = {{"thetas", ds.config.thetas_deg},
                 {"counts_per_setting", ds.config.counts_per_setting},
                 {"visibility", ds.config.visibility},
                 {"dephasing", ds.config.dephasing},
                 {"bootstrap_resamples", ds.config.bootstrap_resamples},
                 {"seed", ds.config.seed},
                 {"poisson_noise", ds.config.poisson_noise}};
  j["jones_convention"] = {{"qwp_before_hwp", ds.convention.qwp_before_hwp},
                           {"tomo_qwp_from_vertical", ds.convention.tomo_qwp_from_vertical}};
  j["criteria"] = rows_json(ds.rows);
  j["sigeur"] = sigeur_json(ds.sigeur_rows);
  j["summary"] = summary_json(ds.rows, ds.sigeur_rows);

  std::ofstream f = open_out(path);
  f << j.dump(2) << "\n";
}

void write_plotdata(const std::string& dir) {
  std::vector<double> grid;
  for (int d = 0; d <= 90; ++d) grid.push_back(static_cast<double>(d));

  for (CoherenceMeasure m : kAllMeasures) {
    std::ofstream f = open_out(dir + "/" + measure_name(m) + ".csv");
    f << "theta_deg,s0,s12half,s012third,bound\n";
    for (double theta_deg : grid) {
      const DensityMatrix rho = bell_like(deg2rad(theta_deg));
      f << csv_num(theta_deg) << ',' << csv_num(one_setting_value(rho, m)) << ','
        << csv_num(two_setting_value(rho, m)) << ',' << csv_num(three_setting_value(rho, m))
        << ',' << csv_num(epsilon_bound(m)) << "\n";
    }
  }

  std::ofstream f = open_out(dir + "/sigeur.csv");
  f << "theta_deg,lhs,bound\n";
  const double bound = sigeur_bound(2.0, 3, 2);
  for (double theta_deg : grid) {
    f << csv_num(theta_deg) << ',' << csv_num(sigeur_lhs(bell_like(deg2rad(theta_deg)), 2.0))
      << ',' << csv_num(bound) << "\n";
  }
}

std::vector<CriterionRow> read_tables_csv(const std::string& path) {
  std::ifstream f = open_in(path);
  std::string line;
  if (!std::getline(f, line) || line != kTablesCsvHeader) {
    throw std::runtime_error("unexpected tables.csv header in " + path);
  }
  std::vector<CriterionRow> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto v = split_csv_line(line);
    if (v.size() != 14) throw std::runtime_error("bad tables.csv row: " + line);
    CriterionRow r{};
    r.theta_deg = std::stod(v[0]);
    r.measure = parse_measure(v[1]);
    r.s0_theory = std::stod(v[2]);
    r.s12half_theory = std::stod(v[3]);
    r.s012third_theory = std::stod(v[4]);
    r.s0_sim = std::stod(v[5]);
    r.s0_err = std::stod(v[6]);
    r.s12half_sim = std::stod(v[7]);
    r.s12half_err = std::stod(v[8]);
    r.s012third_sim = std::stod(v[9]);
    r.s012third_err = std::stod(v[10]);
    r.bound = std::stod(v[11]);
    r.violates_two_setting = parse_bool(v[12]);
    r.violates_one_setting = parse_bool(v[13]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<SigeurRow> read_sigeur_csv(const std::string& path) {
  std::ifstream f = open_in(path);
  std::string line;
  if (!std::getline(f, line) || line != kSigeurCsvHeader) {
    throw std::runtime_error("unexpected sigeur.csv header in " + path);
  }
  std::vector<SigeurRow> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto v = split_csv_line(line);
    if (v.size() != 6) throw std::runtime_error("bad sigeur.csv row: " + line);
    SigeurRow r{};
    r.theta_deg = std::stod(v[0]);
    r.lhs_theory = std::stod(v[1]);
    r.lhs_sim = std::stod(v[2]);
    r.lhs_err = std::stod(v[3]);
    r.bound = std::stod(v[4]);
    r.violated = parse_bool(v[5]);
    rows.push_back(r);
  }
  return rows;
}

void write_summary_json(const std::vector<CriterionRow>& rows,
                        const std::vector<SigeurRow>& sigeur_rows, const std::string& path) {
  json j;
  j["criteria"] = rows_json(rows);
  j["sigeur"] = sigeur_json(sigeur_rows);
  j["summary"] = summary_json(rows, sigeur_rows);
  std::ofstream f = open_out(path);
  f << j.dump(2) << "\n";
}

}  // namespace cohsteer
