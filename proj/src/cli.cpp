#include "hardylab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "hardylab/domains.hpp"
#include "hardylab/errors.hpp"
#include "hardylab/fields.hpp"
#include "hardylab/hardy.hpp"
#include "hardylab/parallel.hpp"
#include "hardylab/radial.hpp"
#include "hardylab/rellich.hpp"
#include "hardylab/report.hpp"

namespace hardylab {

using nlohmann::json;

namespace {

const std::vector<std::string> kCommands = {"hardy",   "critical-delta",  "properties", "rellich",
                                            "radial-classify", "volume-scan", "domain-info"};

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

template <class T>
T read(const json& doc, const std::string& key, const T& fallback) {
    if (!doc.contains(key) || doc[key].is_null()) return fallback;
    try {
        return doc[key].get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field '" + key + "': wrong type");
    }
}

std::optional<double> read_opt(const json& doc, const std::string& key) {
    if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
    if (!doc[key].is_number()) throw ConfigError("field '" + key + "': expected a number");
    return doc[key].get<double>();
}

struct Problem {
    DomainSpec domain;
    CoefficientField field;
    json domain_doc;
};

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("'" + path + "': " + e.what());
    }
}

Problem load_problem(const RunConfig& cfg) {
    json dom = cfg.domain, fld = cfg.field;
    if (!cfg.domain_path.empty()) {
        const json doc = parse_file(cfg.domain_path);
        if (doc.contains("domain")) {
            for (auto it = doc.begin(); it != doc.end(); ++it)
                if (it.key() != "domain" && it.key() != "field")
                    throw ConfigError("field '" + it.key() + "': unknown key in domain file");
            dom = doc["domain"];
            if (doc.contains("field")) fld = doc["field"];
        } else {
            dom = doc;
        }
    }
    if (dom.is_null()) throw ConfigError("field 'domain': no domain given (use --domain)");
    Problem p;
    p.domain = domain_from_json(dom);
    p.domain_doc = domain_to_json(p.domain);
    p.field = fld.is_null() ? CoefficientField::exact(1.5) : field_from_json(fld);
    if (cfg.delta) p.field.delta = *cfg.delta;
    if (!(p.field.delta >= 0.0)) throw ConfigError("field 'delta': must be nonnegative");
    return p;
}

HardyOptions hardy_options(const RunConfig& cfg) {
    HardyOptions o;
    o.mesh.q = cfg.q;
    o.mesh.columns = cfg.columns;
    o.mesh.path = path_from_name(cfg.path);
    o.level_min = cfg.level_min;
    o.level_max = cfg.level_max;
    o.eigen.tol = cfg.eig_tol;
    o.eigen.max_iter = cfg.max_iter;
    if (cfg.inner == "cholesky") {
        o.eigen.inner = InnerSolver::cholesky;
    } else if (cfg.inner == "cg") {
        o.eigen.inner = InnerSolver::cg;
    } else {
        throw ConfigError("field 'inner': expected cholesky or cg");
    }
    o.stabilization_tol = cfg.stabilization_tol;
    o.use_profile = cfg.use_profile;
    o.threads = cfg.threads > 0 ? cfg.threads : worker_count();
    return o;
}

std::vector<double> schedule(const RunConfig& cfg, const DomainSpec& d) {
    return cfg.r_schedule.empty() ? default_schedule(d) : cfg.r_schedule;
}

// Rendered report: machine document plus the csv and text views.
struct Rendered {
    json doc;
    std::string csv, text;
    int status = kExitOk;
};

Rendered cmd_hardy(const RunConfig& cfg) {
    const Problem p = load_problem(cfg);
    const HardyEstimate est = estimate_hardy(p.domain, p.field, schedule(cfg, p.domain), hardy_options(cfg));
    const CriterionReport crit = criterion_report(p.domain, p.field, &est, cfg.criterion_tol);
    Rendered r;
    r.doc = {{"command", "hardy"},
             {"domain", p.domain_doc},
             {"field", field_to_json(p.field)},
             {"estimate", to_json(est)},
             {"criterion", to_json(crit)}};
    std::vector<std::vector<std::string>> rows;
    for (const auto& l : est.per_r)
        for (const auto& lv : l.levels)
            rows.push_back({fmt(est.delta), fmt(l.r), std::to_string(lv.level), fmt(lv.lambda), fmt(l.b)});
    r.csv = csv_table({"delta", "r", "level", "lambda", "b"}, rows);
    std::vector<std::vector<std::string>> trows;
    for (const auto& l : est.per_r)
        trows.push_back({fmt(l.r), l.lower_bound ? fmt(*l.lower_bound) : "-", fmt(l.b),
                         l.ward_bound ? fmt(*l.ward_bound) : "-", l.extrapolation.note});
    r.text = "domain " + kind_name(p.domain.kind) + ", delta " + fmt(est.delta) + ", path " + path_name(est.path) +
             "\n" + text_table({"r", "lower", "estimate", "ward", "note"}, trows) + "b_delta " + fmt(est.b_delta) +
             (est.stabilized ? "" : " (not stabilized)") + "\nverdict " + verdict_name(crit.verdict) + "\n";
    if (crit.verdict == Verdict::undetermined) r.status = kExitUndetermined;
    return r;
}

Rendered cmd_critical(const RunConfig& cfg) {
    const Problem p = load_problem(cfg);
    CriticalDeltaOptions o;
    o.tol = cfg.tol;
    o.max_estimates = cfg.max_estimates;
    o.r_schedule = cfg.r_schedule;
    o.hardy = hardy_options(cfg);
    const CriticalDelta c = critical_delta(p.domain, p.field, o);
    Rendered r;
    r.doc = {{"command", "critical-delta"}, {"domain", p.domain_doc}, {"critical_delta", to_json(c)}};
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : c.history) rows.push_back({fmt(s.delta), fmt(s.b), fmt(s.g)});
    r.csv = csv_table({"delta", "b_delta", "g"}, rows);
    r.text = text_table({"delta", "b_delta", "g"}, rows) + "delta_c " + fmt(c.delta_c) +
             (c.flagged ? " (flagged: " + c.note + ")" : "") + "\n";
    return r;
}

Rendered cmd_properties(const RunConfig& cfg) {
    const Problem p = load_problem(cfg);
    const HardyOptions o = hardy_options(cfg);
    const std::vector<double> sched = schedule(cfg, p.domain);
    std::vector<double> grid = cfg.grid;
    if (grid.empty()) throw ConfigError("field 'grid': empty");
    std::vector<HardyEstimate> ests(grid.size());
    HardyOptions inner = o;
    inner.threads = 1;
    parallel_for(grid.size(), o.threads, [&](std::size_t i) {
        CoefficientField f = p.field;
        f.delta = grid[i];
        ests[i] = estimate_hardy(p.domain, f, sched, inner);
    });
    std::map<double, HardyEstimate> by_delta;
    json estimates = json::array();
    std::vector<std::vector<std::string>> rows;
    const double beta = p.domain.dim - p.domain.hausdorff_dim;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        by_delta[grid[i]] = ests[i];
        CoefficientField f = p.field;
        f.delta = grid[i];
        const CriterionReport crit = criterion_report(p.domain, f, &ests[i], cfg.criterion_tol);
        const double standard = (beta + grid[i] - 2.0) / 2.0;
        estimates.push_back({{"delta", grid[i]},
                             {"b_delta", ests[i].b_delta},
                             {"standard_value", standard},
                             {"stabilized", ests[i].stabilized},
                             {"verdict", verdict_name(crit.verdict)}});
        rows.push_back({fmt(grid[i]), fmt(ests[i].b_delta), fmt(standard), verdict_name(crit.verdict)});
    }
    const PropertyReport prop = property_suite(p.domain, grid, by_delta);
    Rendered r;
    r.doc = {{"command", "properties"},
             {"domain", p.domain_doc},
             {"estimates", estimates},
             {"properties", to_json(prop)}};
    r.csv = csv_table({"delta", "b_delta", "standard_value", "verdict"}, rows);
    std::vector<std::vector<std::string>> prows;
    for (const auto& c : prop.checks)
        prows.push_back({c.name, c.applicable ? (c.pass ? "pass" : "FAIL") : "n/a", fmt(c.worst_margin)});
    r.text = text_table({"delta", "b_delta", "standard", "verdict"}, rows) + "\n" +
             text_table({"property", "result", "worst_margin"}, prows);
    return r;
}

Rendered cmd_rellich(const RunConfig& cfg) {
    const Problem p = load_problem(cfg);
    const double layer = cfg.layer ? *cfg.layer : std::min(1.0, inradius(p.domain));
    double b = 0.0;
    json est_doc = nullptr;
    if (cfg.b_delta) {
        b = *cfg.b_delta;
    } else {
        const HardyEstimate est = estimate_hardy(p.domain, p.field, schedule(cfg, p.domain), hardy_options(cfg));
        b = est.b_delta;
        est_doc = to_json(est);
    }
    const double B_delta = rellich_constant(b, p.field.delta);
    const double B = (cfg.rellich_B ? *cfg.rellich_B : B_delta) * cfg.B_scale;
    Rendered r;
    r.doc = {{"command", "rellich"}, {"domain", p.domain_doc}, {"estimate", est_doc}};
    if (!(B > 0.0)) {
        r.doc["rellich"] = {{"b_delta", b}, {"delta", p.field.delta}, {"B_delta", B_delta}, {"B", B},
                            {"note", "B is not positive; the Rellich inequality gives nothing"}};
        r.csv = csv_table({"id", "lhs", "rhs", "satisfied"}, {});
        r.text = "B_delta " + fmt(B_delta) + ": criterion fails, no verification\n";
        return r;
    }
    const RellichReport rep =
        rellich_verify(p.domain, p.field, layer, b, B, default_bump_family(layer), cfg.grid_points);
    r.doc["rellich"] = to_json(rep);
    std::vector<std::vector<std::string>> rows;
    for (const auto& t : rep.per_test)
        rows.push_back({t.id, fmt(t.lhs), fmt(t.rhs), t.rejected ? "rejected" : (t.satisfied ? "yes" : "no")});
    r.csv = csv_table({"id", "lhs", "rhs", "satisfied"}, rows);
    r.text = "B_delta " + fmt(B_delta) + ", B used " + fmt(B) + "\n" +
             text_table({"test", "lhs", "rhs", "satisfied"}, rows);
    return r;
}

Rendered cmd_radial(const RunConfig& cfg) {
    const WeylClass c = weyl_classify(cfg.d, *cfg.delta);
    const bool esa = c == WeylClass::limit_point;
    const OdeReport ode = ode_integrability_check(cfg.d, *cfg.delta, cfg.lambda, cfg.r_min);
    // Sufficiency of the Hardy criterion on the punctured space: (2 - delta)/2 < (d + delta - 2)/2.
    const bool sufficient = *cfg.delta >= 2.0 || (2.0 - *cfg.delta) / 2.0 < (cfg.d + *cfg.delta - 2.0) / 2.0;
    Rendered r;
    r.doc = {{"command", "radial-classify"},
             {"d", cfg.d},
             {"delta", *cfg.delta},
             {"classification", weyl_name(c)},
             {"essentially_self_adjoint", esa},
             {"hardy_criterion_sufficient", sufficient},
             {"ode", to_json(ode)}};
    const std::string line = weyl_name(c) + " / " + (esa ? "essentially self-adjoint" : "not essentially self-adjoint");
    r.csv = csv_table({"d", "delta", "classification", "essentially_self_adjoint"},
                      {{std::to_string(cfg.d), fmt(*cfg.delta), weyl_name(c), esa ? "true" : "false"}});
    r.text = line + "\n";
    return r;
}

Rendered cmd_volume(const RunConfig& cfg) {
    const Problem p = load_problem(cfg);
    Point center = cfg.anchor_center;
    if (center.empty()) center.assign(static_cast<std::size_t>(p.domain.dim), 0.0);
    const VolumeScan v = volume_scan(p.domain, center, cfg.anchor_radius, cfg.volume_r, cfg.samples, cfg.seed);
    Rendered r;
    r.doc = {{"command", "volume-scan"},
             {"domain", p.domain_doc},
             {"anchor", {{"center", center}, {"radius", cfg.anchor_radius}}},
             {"samples", cfg.samples},
             {"seed", cfg.seed},
             {"volume_scan", to_json(v)}};
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < v.r_values.size(); ++i) rows.push_back({fmt(v.r_values[i]), fmt(v.volumes[i])});
    r.csv = csv_table({"r", "volume"}, rows);
    r.text = text_table({"r", "volume"}, rows) + "slope " + fmt(v.slope) + "\n";
    return r;
}

Rendered cmd_info(const RunConfig& cfg) {
    const Problem p = load_problem(cfg);
    const CatalogInfo info = catalog_info(p.domain);
    const double beta = p.domain.dim - p.domain.hausdorff_dim;
    std::string path;
    try {
        path = path_name(resolve_path(p.domain, SolverPath::automatic));
    } catch (const Error&) {
        path = "none";
    }
    const double rin = inradius(p.domain);
    Rendered r;
    r.doc = {{"command", "domain-info"},
             {"domain", p.domain_doc},
             {"catalog", to_json(info)},
             {"inradius", std::isfinite(rin) ? json(rin) : json(nullptr)},
             {"solver_path", path},
             {"markov_threshold", 2.0 - beta},
             {"critical_interval", {2.0 - beta / 2.0, 2.0}},
             {"default_schedule", default_schedule(p.domain)}};
    std::vector<std::vector<std::string>> rows = {
        {"kind", kind_name(p.domain.kind)},
        {"dim", std::to_string(p.domain.dim)},
        {"hausdorff_dim", fmt(p.domain.hausdorff_dim)},
        {"inradius", fmt(rin)},
        {"solver_path", path},
        {"markov_threshold", fmt(2.0 - beta)},
        {"beta", info.beta_gamma ? fmt(info.beta_gamma->first) : "-"},
        {"gamma", info.beta_gamma ? fmt(info.beta_gamma->second) : "-"}};
    r.csv = csv_table({"key", "value"}, rows);
    r.text = text_table({"key", "value"}, rows);
    return r;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << content;
}

}  // namespace

json config_to_json(const RunConfig& c) {
    return {{"command", c.command},
            {"domain_path", c.domain_path},
            {"domain", c.domain},
            {"field", c.field},
            {"delta", opt(c.delta)},
            {"r_schedule", c.r_schedule},
            {"level_min", c.level_min},
            {"level_max", c.level_max},
            {"path", c.path},
            {"columns", c.columns},
            {"q", c.q},
            {"eig_tol", c.eig_tol},
            {"max_iter", c.max_iter},
            {"inner", c.inner},
            {"stabilization_tol", c.stabilization_tol},
            {"use_profile", c.use_profile},
            {"criterion_tol", c.criterion_tol},
            {"tol", c.tol},
            {"max_estimates", c.max_estimates},
            {"grid", c.grid},
            {"b_delta", opt(c.b_delta)},
            {"rellich_B", opt(c.rellich_B)},
            {"B_scale", c.B_scale},
            {"layer", opt(c.layer)},
            {"grid_points", c.grid_points},
            {"d", c.d},
            {"lambda", c.lambda},
            {"r_min", c.r_min},
            {"anchor_center", c.anchor_center},
            {"anchor_radius", c.anchor_radius},
            {"volume_r", c.volume_r},
            {"samples", c.samples},
            {"seed", c.seed},
            {"output", c.output},
            {"format", c.format},
            {"plot", c.plot},
            {"plot_output", c.plot_output},
            {"threads", c.threads}};
}

RunConfig config_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig c;
    const json known = config_to_json(c);
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (!known.contains(it.key())) throw ConfigError("field '" + it.key() + "': unknown config key");
    c.command = read(doc, "command", c.command);
    c.domain_path = read(doc, "domain_path", c.domain_path);
    if (doc.contains("domain")) c.domain = doc["domain"];
    if (doc.contains("field")) c.field = doc["field"];
    c.delta = read_opt(doc, "delta");
    c.r_schedule = read(doc, "r_schedule", c.r_schedule);
    c.level_min = read(doc, "level_min", c.level_min);
    c.level_max = read(doc, "level_max", c.level_max);
    c.path = read(doc, "path", c.path);
    c.columns = read(doc, "columns", c.columns);
    c.q = read(doc, "q", c.q);
    c.eig_tol = read(doc, "eig_tol", c.eig_tol);
    c.max_iter = read(doc, "max_iter", c.max_iter);
    c.inner = read(doc, "inner", c.inner);
    c.stabilization_tol = read(doc, "stabilization_tol", c.stabilization_tol);
    c.use_profile = read(doc, "use_profile", c.use_profile);
    c.criterion_tol = read(doc, "criterion_tol", c.criterion_tol);
    c.tol = read(doc, "tol", c.tol);
    c.max_estimates = read(doc, "max_estimates", c.max_estimates);
    c.grid = read(doc, "grid", c.grid);
    c.b_delta = read_opt(doc, "b_delta");
    c.rellich_B = read_opt(doc, "rellich_B");
    c.B_scale = read(doc, "B_scale", c.B_scale);
    c.layer = read_opt(doc, "layer");
    c.grid_points = read(doc, "grid_points", c.grid_points);
    c.d = read(doc, "d", c.d);
    c.lambda = read(doc, "lambda", c.lambda);
    c.r_min = read(doc, "r_min", c.r_min);
    c.anchor_center = read(doc, "anchor_center", c.anchor_center);
    c.anchor_radius = read(doc, "anchor_radius", c.anchor_radius);
    c.volume_r = read(doc, "volume_r", c.volume_r);
    c.samples = read(doc, "samples", c.samples);
    c.seed = read(doc, "seed", c.seed);
    c.output = read(doc, "output", c.output);
    c.format = read(doc, "format", c.format);
    c.plot = read(doc, "plot", c.plot);
    c.plot_output = read(doc, "plot_output", c.plot_output);
    c.threads = read(doc, "threads", c.threads);
    return c;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end())
            throw ConfigError("field 'command': unknown command '" + cfg.command + "'");
        if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
            throw ConfigError("field 'format': expected json, csv or text");
        if (cfg.command == "radial-classify" && !cfg.delta) throw ConfigError("field 'delta': required");
        if (!cfg.plot.empty()) plot_kind_from_name(cfg.plot);

        Rendered r;
        if (cfg.command == "hardy") r = cmd_hardy(cfg);
        else if (cfg.command == "critical-delta") r = cmd_critical(cfg);
        else if (cfg.command == "properties") r = cmd_properties(cfg);
        else if (cfg.command == "rellich") r = cmd_rellich(cfg);
        else if (cfg.command == "radial-classify") r = cmd_radial(cfg);
        else if (cfg.command == "volume-scan") r = cmd_volume(cfg);
        else r = cmd_info(cfg);

        const std::string body = cfg.format == "json" ? dump_json(r.doc) : cfg.format == "csv" ? r.csv : r.text;
        // Plot data is built first so a missing series leaves no partial output behind.
        const std::string csv = cfg.plot.empty() ? "" : emit_plot_data(rounded(r.doc), plot_kind_from_name(cfg.plot));
        if (cfg.output.empty()) {
            out << body;
        } else {
            write_file(cfg.output, body);
        }
        if (!cfg.plot.empty()) {
            if (cfg.plot_output.empty()) {
                out << csv;
            } else {
                write_file(cfg.plot_output, csv);
            }
        }
        if (r.status == kExitUndetermined) err << "criterion undetermined: margin within tolerance\n";
        return r.status;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
    } catch (const IterationLimitError& e) {
        err << "solver error: " << e.what() << " (best residual " << fmt(e.best_residual()) << " after "
            << e.iterations() << " iterations)\n";
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitError;
}

}  // namespace hardylab
