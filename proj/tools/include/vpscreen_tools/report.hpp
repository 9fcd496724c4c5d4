#pragma once
#include "vpscreen/assembly.hpp"

#include <string>
#include <vector>

// Machine-readable and printed forms of the screening results.

namespace vpscreen::tools {

struct ReportRow {
  int Z{0};
  double rms_fm{0.0};
  double uehl_a{0.0}, uehl_b{0.0}, wk_a{0.0}, wk_b{0.0};
  double total{0.0};
  double uncertainty{0.0};
};

ReportRow make_row(int Z, double rms_fm, const assembly::Totals &t);

enum class Format { Table, Csv, Json };

inline constexpr const char *kCsvHeader = "Z,rms_fm,uehl_a_eV,uehl_b_eV,wk_a_eV,wk_b_eV,total_eV,unc_eV";

std::string emit(const std::vector<ReportRow> &rows, Format f);
std::vector<ReportRow> parse_csv(const std::string &text);
std::vector<ReportRow> parse_json(const std::string &text);

std::string emit_controls(const std::vector<assembly::ControlReport> &rows, Format f);

} // namespace vpscreen::tools
