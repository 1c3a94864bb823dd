#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "spectra/sweep.hpp"

namespace spectra {

enum class OutputFormat { Table, Csv, Json };

OutputFormat parse_output_format(std::string_view name);

/// 17 significant digits, locale independent.
std::string format_double(double v);

inline constexpr std::string_view kSweepCsvHeader =
    "a,b,m,lambda1_sq_minus_m2,err,lower_sq,upper_sq,improved_lower_sq,reference_iso,"
    "conjecture_margin,region_base,region_large_mass,fitted_order";

void write_csv(std::ostream& os, std::span<const SweepRecord> records);
void write_table(std::ostream& os, std::span<const SweepRecord> records);
nlohmann::ordered_json to_json(const SweepRecord& record);
nlohmann::ordered_json to_json(std::span<const SweepRecord> records);

void write_report(std::ostream& os, std::span<const SweepRecord> records, OutputFormat format);

/// Generic column table used by the non-sweep commands. Cells are
/// preformatted; an empty cell renders as empty in CSV and "-" in tables.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void write_csv(std::ostream& os) const;
  void write_text(std::ostream& os) const;
};

}  // namespace spectra
