#include "vpscreen_tools/report.hpp"

#include "vpscreen/errors.hpp"

#include <cstdio>
#include <json.hpp>
#include <sstream>

namespace vpscreen::tools {

namespace {

const char *const kKeys[] = {"Z",       "rms_fm",  "uehl_a_eV", "uehl_b_eV",
                             "wk_a_eV", "wk_b_eV", "total_eV",  "unc_eV"};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> fields(const ReportRow &r) {
  return {r.rms_fm, r.uehl_a, r.uehl_b, r.wk_a, r.wk_b, r.total, r.uncertainty};
}

ReportRow from_fields(int Z, const std::vector<double> &v) {
  ReportRow r;
  r.Z = Z;
  r.rms_fm = v[0];
  r.uehl_a = v[1];
  r.uehl_b = v[2];
  r.wk_a = v[3];
  r.wk_b = v[4];
  r.total = v[5];
  r.uncertainty = v[6];
  return r;
}

std::string table(const std::vector<ReportRow> &rows) {
  std::ostringstream os;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%4s %8s %10s %10s %10s %10s %10s %9s\n", "Z", "rms(fm)",
                "Uehl-a", "Uehl-b", "WK-a", "WK-b", "total", "unc");
  os << buf;
  for (const auto &r : rows) {
    std::snprintf(buf, sizeof buf, "%4d %8.3f %10.5f %10.5f %10.5f %10.5f %10.5f %9.5f\n", r.Z,
                  r.rms_fm, r.uehl_a, r.uehl_b, r.wk_a, r.wk_b, r.total, r.uncertainty);
    os << buf;
  }
  return os.str();
}

} // namespace

ReportRow make_row(int Z, double rms_fm, const assembly::Totals &t) {
  ReportRow r;
  r.Z = Z;
  r.rms_fm = rms_fm;
  for (const auto &c : t.parts) {
    switch (c.diagram) {
    case assembly::Diagram::UehlA:
      r.uehl_a = c.value;
      break;
    case assembly::Diagram::UehlB:
      r.uehl_b = c.value;
      break;
    case assembly::Diagram::WKA:
      r.wk_a = c.value;
      break;
    case assembly::Diagram::WKB:
      r.wk_b = c.value;
      break;
    }
  }
  r.total = r.uehl_a + r.uehl_b + r.wk_a + r.wk_b;
  r.uncertainty = t.uncertainty;
  return r;
}

std::string emit(const std::vector<ReportRow> &rows, Format f) {
  if (f == Format::Table)
    return table(rows);
  if (f == Format::Json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &r : rows) {
      nlohmann::ordered_json o;
      o[kKeys[0]] = r.Z;
      const auto v = fields(r);
      for (std::size_t i = 0; i < v.size(); ++i)
        o[kKeys[i + 1]] = v[i];
      arr.push_back(o);
    }
    return arr.dump(2) + "\n";
  }
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto &r : rows) {
    out += std::to_string(r.Z);
    for (double v : fields(r))
      out += "," + g17(v);
    out += "\n";
  }
  return out;
}

std::vector<ReportRow> parse_csv(const std::string &text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader)
    throw DomainError("csv: missing header");
  std::vector<ReportRow> rows;
  while (std::getline(is, line)) {
    if (line.empty())
      continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ','))
      cells.push_back(cell);
    if (cells.size() != 8)
      throw DomainError("csv: expected 8 fields in '" + line + "'");
    std::vector<double> v;
    for (std::size_t i = 1; i < cells.size(); ++i)
      v.push_back(std::stod(cells[i]));
    rows.push_back(from_fields(std::stoi(cells[0]), v));
  }
  return rows;
}

std::vector<ReportRow> parse_json(const std::string &text) {
  const auto arr = nlohmann::json::parse(text);
  if (!arr.is_array())
    throw DomainError("json: expected an array");
  std::vector<ReportRow> rows;
  for (const auto &o : arr) {
    std::vector<double> v;
    for (std::size_t i = 1; i < 8; ++i)
      v.push_back(o.at(kKeys[i]).get<double>());
    rows.push_back(from_fields(o.at(kKeys[0]).get<int>(), v));
  }
  return rows;
}

std::string emit_controls(const std::vector<assembly::ControlReport> &rows, Format f) {
  const char *keys[] = {"uehl_a_eV", "uehl_b_eV", "wk_a_eV", "wk_b_eV",
                        "sum_eV",    "dEdZ_eV",   "dEdZ_step_eV", "discrepancy"};
  auto values = [](const assembly::ControlReport &r) {
    return std::vector<double>{r.uehl_a, r.uehl_b, r.wk_a, r.wk_b,
                               r.sum,    r.dedz,   r.dedz_step, r.discrepancy};
  };
  if (f == Format::Json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &r : rows) {
      nlohmann::ordered_json o;
      o["Z"] = r.Z;
      const auto v = values(r);
      for (std::size_t i = 0; i < v.size(); ++i)
        o[keys[i]] = v[i];
      arr.push_back(o);
    }
    return arr.dump(2) + "\n";
  }
  std::ostringstream os;
  if (f == Format::Csv) {
    os << "Z";
    for (const char *k : keys)
      os << ',' << k;
    os << '\n';
    for (const auto &r : rows) {
      os << r.Z;
      for (double v : values(r))
        os << ',' << g17(v);
      os << '\n';
    }
    return os.str();
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%4s %10s %10s %10s %10s %10s %10s %9s\n", "Z", "Uehl-a",
                "Uehl-b", "WK-a", "WK-b", "sum", "dE/dZ", "rel.diff");
  os << buf;
  for (const auto &r : rows) {
    std::snprintf(buf, sizeof buf, "%4d %10.5f %10.5f %10.5f %10.5f %10.5f %10.5f %9.1e\n", r.Z,
                  r.uehl_a, r.uehl_b, r.wk_a, r.wk_b, r.sum, r.dedz, r.discrepancy);
    os << buf;
  }
  return os.str();
}

} // namespace vpscreen::tools
