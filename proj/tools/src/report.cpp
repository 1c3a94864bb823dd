#include "spectra/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>

#include "trispec/errors.hpp"

namespace spectra {

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::vector<std::string> csv_row(const SweepRecord& r) {
  std::vector<std::string> row{format_double(r.a), cell(r.b), format_double(r.m)};
  if (!r.ok) {
    row.resize(13);
    return row;
  }
  row.push_back(format_double(r.lambda1_sq_minus_m2));
  row.push_back(format_double(r.err));
  row.push_back(format_double(r.lower_sq));
  row.push_back(format_double(r.upper_sq));
  row.push_back(cell(r.improved_lower_sq));
  row.push_back(format_double(r.reference_iso));
  row.push_back(format_double(r.conjecture_margin));
  row.push_back(r.region_base ? "true" : "false");
  row.push_back(r.region_large_mass ? "true" : "false");
  row.push_back(std::isfinite(r.fitted_order) ? format_double(r.fitted_order) : std::string());
  return row;
}

nlohmann::ordered_json number(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
  if (name == "table") return OutputFormat::Table;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw trispec::DomainError("unknown output format '" + std::string(name) + "'");
}

std::string format_double(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

void Table::write_csv(std::ostream& os) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
}

void Table::write_text(std::ostream& os) const {
  std::vector<std::size_t> width(columns.size());
  for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) {
      width[i] = std::max(width[i], std::max<std::size_t>(r[i].size(), 1));
    }
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < width.size(); ++i) {
      const std::string& c = i < cells.size() && !cells[i].empty() ? cells[i] : "-";
      os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << c;
    }
    os << '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
}

void write_csv(std::ostream& os, std::span<const SweepRecord> records) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : records) {
    const auto row = csv_row(r);
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

void write_table(std::ostream& os, std::span<const SweepRecord> records) {
  Table t;
  std::istringstream header{std::string(kSweepCsvHeader)};
  for (std::string col; std::getline(header, col, ',');) t.columns.push_back(col);
  t.columns.push_back("status");
  for (const auto& r : records) {
    auto row = csv_row(r);
    row.push_back(r.ok ? "ok" : "failed: " + r.error);
    t.rows.push_back(std::move(row));
  }
  t.write_text(os);
}

nlohmann::ordered_json to_json(const SweepRecord& r) {
  nlohmann::ordered_json j;
  j["a"] = r.a;
  j["b"] = r.b ? nlohmann::ordered_json(*r.b) : nlohmann::ordered_json(nullptr);
  j["m"] = r.m;
  j["status"] = r.ok ? "ok" : "failed";
  if (!r.ok) {
    j["error"] = r.error;
    return j;
  }
  j["lambda1_sq_minus_m2"] = r.lambda1_sq_minus_m2;
  j["err"] = r.err;
  j["lower_sq"] = r.lower_sq;
  j["upper_sq"] = r.upper_sq;
  j["improved_lower_sq"] =
      r.improved_lower_sq ? nlohmann::ordered_json(*r.improved_lower_sq) : nlohmann::ordered_json(nullptr);
  j["reference_iso"] = r.reference_iso;
  j["reference_iso_err"] = r.reference_iso_err;
  j["conjecture_margin"] = r.conjecture_margin;
  j["margin_err"] = r.margin_err;
  j["region_base"] = r.region_base;
  j["region_large_mass"] = r.region_large_mass;
  j["sufficient_condition"] = r.sufficient_condition;
  j["mesh_n_list"] = r.mesh_n_list;
  j["fitted_order"] = number(r.fitted_order);
  return j;
}

nlohmann::ordered_json to_json(std::span<const SweepRecord> records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  return arr;
}

void write_report(std::ostream& os, std::span<const SweepRecord> records, OutputFormat format) {
  if (records.empty()) throw trispec::DomainError("report needs at least one record");
  switch (format) {
    case OutputFormat::Table:
      write_table(os, records);
      break;
    case OutputFormat::Csv:
      write_csv(os, records);
      break;
    case OutputFormat::Json:
      os << to_json(records).dump(2) << '\n';
      break;
  }
}

}  // namespace spectra
