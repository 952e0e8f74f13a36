#pragma once

// Machine-readable renderings: JSON objects for reports, CSV rows for sweeps.
// Exact values are always "num/den" strings; *_decimal fields are
// approximate, for reading only.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "normality/lemma.hpp"
#include "normality/measure.hpp"
#include "normality/stats.hpp"

namespace normality {

inline nlohmann::ordered_json to_json(const NormalityReport& report) {
  nlohmann::ordered_json j;
  j["base"] = report.base.radix();
  j["n"] = report.n;
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  nlohmann::ordered_json deviations = nlohmann::ordered_json::object();
  for (std::size_t b = 0; b < report.deviations.size(); ++b) {
    counts[std::to_string(b)] = report.counts[b];
    deviations[std::to_string(b)] = report.deviations[b].to_string();
  }
  j["counts"] = std::move(counts);
  j["deviations"] = std::move(deviations);
  j["max_deviation"] = report.max_deviation.to_string();
  j["max_deviation_decimal"] = report.max_deviation.to_decimal(12);
  return j;
}

inline nlohmann::ordered_json to_json(const MeasureReport& report) {
  nlohmann::ordered_json j;
  j["r"] = report.spec.r().radix();
  j["b"] = report.spec.b();
  j["n"] = report.spec.n();
  j["epsilon"] = report.spec.epsilon().to_string();
  j["exact_measure"] = report.exact_measure.to_string();
  j["bound"] = report.bound.to_string();
  j["admissible_p"] = report.admissible_p;
  return j;
}

inline void write_lemma_csv(std::ostream& out, const std::vector<MainLemmaRow>& rows) {
  out << "n,sum,bound,ratio_decimal,holds\n";
  for (const auto& row : rows)
    out << row.n << ',' << row.sum << ',' << row.bound << ',' << row.ratio.to_decimal(12) << ','
        << (row.holds ? "true" : "false") << '\n';
}

inline void write_battery_csv(std::ostream& out, const std::vector<BatteryCell>& cells) {
  out << "m,n,max_deviation,max_deviation_decimal\n";
  for (const auto& cell : cells)
    out << cell.m << ',' << cell.n << ',' << cell.report.max_deviation << ','
        << cell.report.max_deviation.to_decimal(12) << '\n';
}

inline void write_measure_csv_header(std::ostream& out) {
  out << "r,b,n,epsilon,exact_measure,bound,exact_measure_decimal,bound_decimal,within_bound\n";
}

inline void write_measure_csv_row(std::ostream& out, const MeasureReport& report) {
  out << report.spec.r().radix() << ',' << report.spec.b() << ',' << report.spec.n() << ','
      << report.spec.epsilon() << ',' << report.exact_measure << ',' << report.bound << ','
      << report.exact_measure.to_decimal(12) << ',' << report.bound.to_decimal(12) << ','
      << (report.exact_measure <= report.bound ? "true" : "false") << '\n';
}

}  // namespace normality
