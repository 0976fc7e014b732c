// hardylab: batch front end. Flags override values read from --config.
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardylab/cli.hpp"
#include "hardylab/errors.hpp"

namespace {

using hardylab::RunConfig;

struct Override {
    CLI::Option* option;
    std::function<void(RunConfig&)> apply;
};

class Flags {
public:
    explicit Flags(CLI::App* app) : app_(app) {}

    template <class T>
    void add(const std::string& name, T RunConfig::*member, const std::string& help) {
        auto value = std::make_shared<T>();
        CLI::Option* o = app_->add_option(name, *value, help);
        if constexpr (std::is_same_v<T, std::vector<double>>) o->delimiter(',');
        overrides_.push_back({o, [value, member](RunConfig& c) { c.*member = *value; }});
    }

    void add_optional(const std::string& name, std::optional<double> RunConfig::*member, const std::string& help) {
        auto value = std::make_shared<double>();
        CLI::Option* o = app_->add_option(name, *value, help);
        overrides_.push_back({o, [value, member](RunConfig& c) { c.*member = *value; }});
    }

    void add_switch(const std::string& name, bool RunConfig::*member, const std::string& help) {
        CLI::Option* o = app_->add_flag(name, help);
        overrides_.push_back({o, [member](RunConfig& c) { c.*member = true; }});
    }

    void apply(RunConfig& c) const {
        for (const auto& o : overrides_)
            if (o.option->count() > 0) o.apply(c);
    }

private:
    CLI::App* app_;
    std::vector<Override> overrides_;
};

void common(Flags& f) {
    f.add("-o,--output", &RunConfig::output, "report file (default: standard output)");
    f.add("--format", &RunConfig::format, "json, csv or text");
    f.add("--plot", &RunConfig::plot, "plot series: b_vs_delta, b_vs_r, lambda_vs_level, volume_loglog");
    f.add("--plot-output", &RunConfig::plot_output, "plot CSV file (default: standard output)");
    f.add("--threads", &RunConfig::threads, "worker count (0: HARDYLAB_THREADS, else 1)");
}

void problem(Flags& f) {
    f.add("--domain", &RunConfig::domain_path, "domain JSON file");
    f.add_optional("--delta", &RunConfig::delta, "degeneracy order, overrides the field file");
}

void solver(Flags& f) {
    f.add("--r", &RunConfig::r_schedule, "layer widths, strictly decreasing, comma separated");
    f.add("--level-min", &RunConfig::level_min, "coarsest mesh level");
    f.add("--level-max", &RunConfig::level_max, "finest mesh level (-1: path default)");
    f.add("--path", &RunConfig::path, "auto, radial or planar");
    f.add("--columns", &RunConfig::columns, "angular columns of planar meshes");
    f.add("--q", &RunConfig::q, "geometric grading ratio");
    f.add("--eig-tol", &RunConfig::eig_tol, "eigen-solver relative residual");
    f.add("--max-iter", &RunConfig::max_iter, "eigen-solver iteration budget");
    f.add("--inner", &RunConfig::inner, "inner solver: cholesky or cg");
    f.add("--stabilization-tol", &RunConfig::stabilization_tol, "b change accepted between layer widths");
    f.add_switch("--use-profile", &RunConfig::use_profile, "include the profile c in the quadratic forms");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted boundary Hardy constants and self-adjointness criteria"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON run configuration; flags override it")->check(CLI::ExistingFile);

    struct Command {
        CLI::App* app;
        std::unique_ptr<Flags> flags;
    };
    std::vector<Command> commands;
    auto sub = [&](const std::string& name, const std::string& help) -> Flags& {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("--config", config_path, "JSON run configuration; flags override it")
            ->check(CLI::ExistingFile);
        commands.push_back({s, std::make_unique<Flags>(s)});
        common(*commands.back().flags);
        return *commands.back().flags;
    };

    {
        Flags& f = sub("hardy", "estimate b_delta and evaluate the self-adjointness criterion");
        problem(f);
        solver(f);
        f.add("--criterion-tol", &RunConfig::criterion_tol, "margin below which the verdict is undetermined");
    }
    {
        Flags& f = sub("critical-delta", "locate the critical degeneracy by bisection");
        problem(f);
        solver(f);
        f.add("--tol", &RunConfig::tol, "bracket width");
        f.add("--max-estimates", &RunConfig::max_estimates, "estimate budget");
    }
    {
        Flags& f = sub("properties", "estimate b_delta on a grid and check the structural properties");
        problem(f);
        solver(f);
        f.add("--grid", &RunConfig::grid, "delta values, comma separated");
        f.add("--criterion-tol", &RunConfig::criterion_tol, "margin below which a verdict is undetermined");
    }
    {
        Flags& f = sub("rellich", "check the Rellich inequality on bump families");
        problem(f);
        solver(f);
        f.add_optional("--b", &RunConfig::b_delta, "use this b_delta instead of estimating it");
        f.add_optional("--B", &RunConfig::rellich_B, "Rellich constant to test (default: B_delta)");
        f.add("--B-scale", &RunConfig::B_scale, "multiplier applied to B");
        f.add_optional("--layer", &RunConfig::layer, "layer width (default: min(1, inradius))");
        f.add("--grid-points", &RunConfig::grid_points, "log-grid points for the radial quadrature");
    }
    {
        Flags& f = sub("radial-classify", "Weyl classification of the radial operator on the punctured space");
        f.add("--d", &RunConfig::d, "dimension");
        f.add_optional("--delta", &RunConfig::delta, "degeneracy order");
        f.add("--lambda", &RunConfig::lambda, "spectral parameter of the ODE check");
        f.add("--r-min", &RunConfig::r_min, "inner radius of the ODE check");
    }
    {
        Flags& f = sub("volume-scan", "Monte-Carlo volume of boundary layers and log-log slope");
        problem(f);
        f.add("--anchor-center", &RunConfig::anchor_center, "anchor ball center, comma separated");
        f.add("--anchor-radius", &RunConfig::anchor_radius, "anchor ball radius");
        f.add("--volume-r", &RunConfig::volume_r, "layer widths, strictly decreasing");
        f.add("--samples", &RunConfig::samples, "Monte-Carlo samples");
        f.add("--seed", &RunConfig::seed, "random seed");
    }
    {
        Flags& f = sub("domain-info", "catalog data of a domain");
        problem(f);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? hardylab::kExitOk : hardylab::kExitError;
    }

    RunConfig config;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(in);
            } catch (const nlohmann::json::parse_error& e) {
                throw hardylab::ConfigError("'" + config_path + "': " + e.what());
            }
            config = hardylab::config_from_json(doc);
        }
    } catch (const hardylab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return hardylab::kExitError;
    }
    for (const auto& c : commands) {
        if (!c.app->parsed()) continue;
        config.command = c.app->get_name();
        c.flags->apply(config);
    }
    return hardylab::run(config, std::cout, std::cerr);
}
