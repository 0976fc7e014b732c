#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hardylab/domains.hpp"
#include "hardylab/hardy.hpp"
#include "hardylab/radial.hpp"
#include "hardylab/rellich.hpp"

namespace hardylab {

// Value rounded to 12 significant digits.
double round12(double v);

// Copy of doc with every floating-point number rounded to 12 significant digits.
nlohmann::json rounded(const nlohmann::json& doc);

// Rounded, indented, newline-terminated JSON text.
std::string dump_json(const nlohmann::json& doc);

nlohmann::json to_json(const Extrapolation& e);
nlohmann::json to_json(const LayerEstimate& e);
nlohmann::json to_json(const HardyEstimate& e);
nlohmann::json to_json(const CriterionReport& r);
nlohmann::json to_json(const CriticalDelta& c);
nlohmann::json to_json(const PropertyReport& p);
nlohmann::json to_json(const RellichReport& r);
nlohmann::json to_json(const OdeReport& r);
nlohmann::json to_json(const VolumeScan& v);
nlohmann::json to_json(const LollipopScan& s);
nlohmann::json to_json(const CatalogInfo& c);

// Aligned columns: a header row, then one row per entry; numbers already formatted.
std::string text_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

// Comma-separated table with a header row.
std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

// 12 significant digits, shortest form.
std::string fmt(double v);

enum class PlotKind { b_vs_delta, b_vs_r, lambda_vs_level, volume_loglog, lollipop_eps };

std::string plot_kind_name(PlotKind k);
PlotKind plot_kind_from_name(const std::string& name);

// Plot kinds whose series are present in a report document.
std::vector<PlotKind> available_plots(const nlohmann::json& report);

// CSV with a header naming the axes. Missing series raise ArgumentError listing the available kinds.
std::string emit_plot_data(const nlohmann::json& report, PlotKind kind);

}  // namespace hardylab
