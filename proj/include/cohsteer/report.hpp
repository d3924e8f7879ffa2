#pragma once

#include <string>
#include <vector>

#include "cohsteer/expsim.hpp"

namespace cohsteer {

struct TheoryRow {
  double theta_deg;
  CoherenceMeasure measure;
  double s0, s12_half, s012_third, bound;
  bool violates_two_setting;
  bool violates_one_setting;
};

std::vector<TheoryRow> build_theory_rows(const std::vector<double>& thetas_deg,
                                         const std::vector<CoherenceMeasure>& measures);

// Fixed 4-decimal formatting used in every CSV column; "-0.0000" normalizes
// to "0.0000".
std::string csv_num(double v);

extern const char* const kTablesCsvHeader;
extern const char* const kSigeurCsvHeader;
extern const char* const kTheoryCsvHeader;

void write_theory_csv(const std::vector<TheoryRow>& rows, const std::string& path);
void write_tables_csv(const SweepDataset& ds, const std::string& path);
void write_sigeur_csv(const SweepDataset& ds, const std::string& path);
void write_report_json(const SweepDataset& ds, const std::string& path);

// Theory curves on a 1-degree grid for external plotting: <dir>/l1c.csv,
// rec.csv, sic.csv, sigeur.csv.
void write_plotdata(const std::string& dir);

// Readers for the report subcommand; these only parse files written above.
std::vector<CriterionRow> read_tables_csv(const std::string& path);
std::vector<SigeurRow> read_sigeur_csv(const std::string& path);

// Summary JSON rebuilt from previously written CSV files.
void write_summary_json(const std::vector<CriterionRow>& rows,
                        const std::vector<SigeurRow>& sigeur_rows, const std::string& path);

}  // namespace cohsteer
