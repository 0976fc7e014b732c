#include "hardylab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hardylab/errors.hpp"

namespace hardylab {

namespace {

using nlohmann::json;

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

double round12(double v) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

json rounded(const json& doc) {
    if (doc.is_number_float()) return round12(doc.get<double>());
    if (doc.is_array()) {
        json out = json::array();
        for (const auto& v : doc) out.push_back(rounded(v));
        return out;
    }
    if (doc.is_object()) {
        json out = json::object();
        for (auto it = doc.begin(); it != doc.end(); ++it) out[it.key()] = rounded(it.value());
        return out;
    }
    return doc;
}

std::string dump_json(const json& doc) { return rounded(doc).dump(2) + "\n"; }

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json to_json(const Extrapolation& e) {
    return {{"lambda_inf", e.lambda_inf}, {"rate", opt(e.rate)}, {"refused", e.refused}, {"note", e.note}};
}

json to_json(const LayerEstimate& e) {
    json levels = json::array();
    for (const auto& l : e.levels)
        levels.push_back({{"level", l.level},
                          {"h", l.h},
                          {"lambda", l.lambda},
                          {"residual", l.residual},
                          {"iterations", l.iterations},
                          {"dofs", l.dofs}});
    return {{"r", e.r},
            {"levels", levels},
            {"extrapolation", to_json(e.extrapolation)},
            {"b", e.b},
            {"lower_bound", opt(e.lower_bound)},
            {"ward_bound", opt(e.ward_bound)}};
}

json to_json(const HardyEstimate& e) {
    json per_r = json::array();
    for (const auto& l : e.per_r) per_r.push_back(to_json(l));
    return {{"delta", e.delta},
            {"path", path_name(e.path)},
            {"r_schedule", e.r_schedule},
            {"per_r", per_r},
            {"b_delta", e.b_delta},
            {"stable_r", e.r_schedule.empty() ? json(nullptr) : json(e.r_schedule[e.stable_index])},
            {"error_indicator", e.error_indicator},
            {"stabilized", e.stabilized}};
}

json to_json(const CriterionReport& r) {
    return {{"delta", r.delta},
            {"b_delta", opt(r.b_delta)},
            {"standard_value", r.standard_value},
            {"self_adjoint_sufficient", r.self_adjoint_sufficient},
            {"markov_unique", r.markov_unique},
            {"necessary_violated", r.necessary_violated},
            {"margin", opt(r.margin)},
            {"verdict", verdict_name(r.verdict)},
            {"delta_c", opt(r.delta_c)},
            {"triple", {{"lower", opt(r.lower_bound)}, {"estimate", opt(r.b_delta)}, {"ward", opt(r.ward_bound)}}}};
}

json to_json(const CriticalDelta& c) {
    json history = json::array();
    for (const auto& s : c.history) history.push_back({{"delta", s.delta}, {"b_delta", s.b}, {"g", s.g}});
    return {{"delta_c", c.delta_c},
            {"flagged", c.flagged},
            {"note", c.note},
            {"theorem_interval", {c.theorem_lower, 2.0}},
            {"in_theorem_interval", c.in_theorem_interval},
            {"estimates", c.history.size()},
            {"history", history}};
}

json to_json(const PropertyReport& p) {
    json checks = json::array();
    for (const auto& c : p.checks)
        checks.push_back(
            {{"name", c.name}, {"applicable", c.applicable}, {"pass", c.pass}, {"worst_margin", c.worst_margin}});
    return {{"grid", p.grid}, {"b_delta", p.b}, {"checks", checks}, {"all_pass", p.all_pass}};
}

json to_json(const RellichReport& r) {
    json tests = json::array();
    for (const auto& t : r.per_test)
        tests.push_back({{"id", t.id},
                         {"lhs", t.lhs},
                         {"rhs", t.rhs},
                         {"ratio", t.rhs > 0.0 ? json(t.lhs / t.rhs) : json(nullptr)},
                         {"satisfied", t.satisfied},
                         {"rejected", t.rejected}});
    return {{"b_delta", r.b_delta},
            {"delta", r.delta},
            {"B_delta", r.B_delta},
            {"B", r.B},
            {"per_test", tests},
            {"all_satisfied", r.all_satisfied}};
}

json to_json(const OdeReport& r) {
    return {{"u1_l2_mass", r.u1_mass},
            {"u2_l2_mass", r.u2_mass},
            {"growth", {r.growth_small, r.growth_large}},
            {"bounded_count", r.bounded_count},
            {"expected", weyl_name(r.expected)},
            {"classification_consistent", r.classification_consistent},
            {"reached_r", r.reached_r},
            {"partial", r.partial}};
}

json to_json(const VolumeScan& v) { return {{"r_values", v.r_values}, {"volumes", v.volumes}, {"slope", v.slope}}; }

json to_json(const LollipopScan& s) {
    json rows = json::array();
    for (const auto& r : s.rows) rows.push_back({{"eps", r.eps}, {"b_delta", r.b}});
    return {{"rows", rows}, {"slope", s.slope}};
}

json to_json(const CatalogInfo& c) {
    json bg = nullptr;
    if (c.beta_gamma) bg = {{"beta", c.beta_gamma->first}, {"gamma", c.beta_gamma->second}};
    return {{"dim", c.dim},
            {"hausdorff_dim", c.hausdorff_dim},
            {"standard_hardy_formula_applicable", c.standard_hardy_formula_applicable},
            {"beta_gamma", bg}};
}

std::string text_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t j = 0; j < header.size(); ++j) width[j] = header[j].size();
    for (const auto& row : rows)
        for (std::size_t j = 0; j < row.size() && j < width.size(); ++j) width[j] = std::max(width[j], row[j].size());
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t j = 0; j < width.size(); ++j) {
            const std::string cell = j < cells.size() ? cells[j] : "";
            if (j + 1 < width.size()) {
                out << cell << std::string(width[j] - cell.size() + 2, ' ');
            } else {
                out << cell << "\n";
            }
        }
    };
    line(header);
    for (const auto& row : rows) line(row);
    return out.str();
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t j = 0; j < cells.size(); ++j) out << cells[j] << (j + 1 < cells.size() ? "," : "\n");
    };
    line(header);
    for (const auto& row : rows) line(row);
    return out.str();
}

std::string plot_kind_name(PlotKind k) {
    switch (k) {
        case PlotKind::b_vs_delta: return "b_vs_delta";
        case PlotKind::b_vs_r: return "b_vs_r";
        case PlotKind::lambda_vs_level: return "lambda_vs_level";
        case PlotKind::volume_loglog: return "volume_loglog";
        case PlotKind::lollipop_eps: return "lollipop_eps";
    }
    return "unknown";
}

PlotKind plot_kind_from_name(const std::string& name) {
    for (PlotKind k : {PlotKind::b_vs_delta, PlotKind::b_vs_r, PlotKind::lambda_vs_level, PlotKind::volume_loglog,
                       PlotKind::lollipop_eps})
        if (plot_kind_name(k) == name) return k;
    throw ArgumentError("unknown plot kind '" + name +
                        "'; expected b_vs_delta, b_vs_r, lambda_vs_level, volume_loglog or lollipop_eps");
}

std::vector<PlotKind> available_plots(const json& report) {
    std::vector<PlotKind> out;
    if (report.contains("estimates") && report["estimates"].is_array()) out.push_back(PlotKind::b_vs_delta);
    if (report.contains("estimate") && report["estimate"].contains("per_r")) {
        out.push_back(PlotKind::b_vs_r);
        out.push_back(PlotKind::lambda_vs_level);
    }
    if (report.contains("volume_scan")) out.push_back(PlotKind::volume_loglog);
    if (report.contains("lollipop")) out.push_back(PlotKind::lollipop_eps);
    return out;
}

std::string emit_plot_data(const json& report, PlotKind kind) {
    const auto avail = available_plots(report);
    if (std::find(avail.begin(), avail.end(), kind) == avail.end()) {
        std::string names;
        for (PlotKind k : avail) names += (names.empty() ? "" : ", ") + plot_kind_name(k);
        throw ArgumentError("report has no " + plot_kind_name(kind) + " series; available: " +
                            (names.empty() ? std::string("none") : names));
    }
    std::vector<std::vector<std::string>> rows;
    auto num = [](const json& v) { return v.is_null() ? std::string("") : fmt(v.get<double>()); };
    switch (kind) {
        case PlotKind::b_vs_delta:
            for (const auto& e : report["estimates"])
                rows.push_back({num(e["delta"]), num(e["b_delta"]), num(e["standard_value"])});
            return csv_table({"delta", "b_delta", "standard_value"}, rows);
        case PlotKind::b_vs_r:
            for (const auto& l : report["estimate"]["per_r"]) rows.push_back({num(l["r"]), num(l["b"])});
            return csv_table({"r", "b_delta_r"}, rows);
        case PlotKind::lambda_vs_level:
            for (const auto& l : report["estimate"]["per_r"])
                for (const auto& lv : l["levels"])
                    rows.push_back({num(l["r"]), std::to_string(lv["level"].get<int>()), num(lv["lambda"])});
            return csv_table({"r", "level", "lambda_min"}, rows);
        case PlotKind::volume_loglog: {
            const auto& v = report["volume_scan"];
            for (std::size_t i = 0; i < v["r_values"].size(); ++i)
                rows.push_back({fmt(std::log(v["r_values"][i].get<double>())),
                                fmt(std::log(v["volumes"][i].get<double>()))});
            return csv_table({"log_r", "log_volume"}, rows);
        }
        case PlotKind::lollipop_eps:
            for (const auto& r : report["lollipop"]["rows"]) rows.push_back({num(r["eps"]), num(r["b_delta"])});
            return csv_table({"eps", "b_delta"}, rows);
    }
    return "";
}

}  // namespace hardylab
