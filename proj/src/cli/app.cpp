#include "pparab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

namespace pparab::cli {

namespace {

/// Flag values collected before the config document is typed.
struct Flags {
    std::string config;
    std::optional<std::string> p, n, h, dt, out, seed, datum, construction, samples, tol, target, h_levels, p_list,
        points;
    std::string domain;
    std::vector<std::string> set;
    bool subquadratic = false;
};

void add_common(CLI::App* sub, Flags& f)
{
    sub->add_option("--config", f.config, "Experiment config file");
    sub->add_option("--p", f.p, "Exponent p (> 1, or inf)");
    sub->add_option("--n", f.n, "Space dimension");
    sub->add_option("--seed", f.seed, "Quasi-random sampling phase");
    sub->add_option("--out", f.out, "CSV output path (default: standard output)");
    sub->add_option("--set", f.set, "Override any config key: section.key=value (repeatable)");
}

void add_domain(CLI::App* sub, Flags& f)
{
    sub->add_option("--domain", f.domain, "Domain as kind:key=value;key=value");
}

void add_grid(CLI::App* sub, Flags& f)
{
    sub->add_option("--h", f.h, "Grid spacing");
    sub->add_option("--dt", f.dt, "Time step (default: CFL bound)");
}

void add_datum(CLI::App* sub, Flags& f)
{
    sub->add_option("--datum", f.datum, "distance | constant:v | exact:<label> | expression:<text>");
}

struct Built {
    CLI::App app{"Numerical laboratory for the normalized p-parabolic equation", "pparab"};
    Flags flags;
    std::map<std::string, CLI::App*> subs;
};

std::unique_ptr<Built> build()
{
    auto b = std::make_unique<Built>();
    auto& app = b->app;
    auto& f = b->flags;
    // --h is the grid spacing, so help is long-form only.
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.footer("Exit status: 0 success, 1 experiment failure, 2 configuration error.\n"
               "PPARAB_THREADS caps the number of worker threads.");

    auto* vs = app.add_subcommand("verify-solutions", "Residuals of the explicit solution catalog");
    add_common(vs, f);
    vs->add_option("--samples", f.samples, "Sample count per entry");
    vs->add_option("--tol", f.tol, "Residual threshold for success");

    auto* vb = app.add_subcommand("verify-barriers", "Check the barrier axioms of one construction");
    add_common(vb, f);
    vb->add_option("--construction", f.construction, "sphere | petrovsky | irregularity");
    vb->add_option("--samples", f.samples, "Interior sample count (>= 100)");
    vb->add_option("--tol", f.tol, "Tolerance of the sign condition");

    auto* so = app.add_subcommand("solve", "Explicit monotone scheme on a domain");
    add_common(so, f);
    add_domain(so, f);
    add_grid(so, f);
    add_datum(so, f);
    so->add_flag("--experimental-subquadratic", f.subquadratic, "Admit 1 < p < 2 (no convergence claim)");

    auto* pr = app.add_subcommand("probe-regularity", "Regularity verdict at a boundary point");
    add_common(pr, f);
    add_domain(pr, f);
    pr->add_option("--target", f.target, "Boundary point x..., t");
    pr->add_option("--h-levels", f.h_levels, "Strictly decreasing grid spacings");

    auto* ct = app.add_subcommand("cylinder-top", "Top-of-cylinder data irrelevance and the h-tilde bracket");
    add_common(ct, f);
    add_domain(ct, f);
    add_grid(ct, f);
    add_datum(ct, f);

    auto* sw = app.add_subcommand("sweep-p", "Distance of p-solutions to the p = inf solution");
    add_common(sw, f);
    add_domain(sw, f);
    add_grid(sw, f);
    add_datum(sw, f);
    sw->add_option("--p-list", f.p_list, "Comma-separated exponents");

    auto* fl = app.add_subcommand("fundamental-limit", "Fundamental solution against its p = inf limit");
    add_common(fl, f);
    fl->add_option("--p-list", f.p_list, "Comma-separated exponents");
    fl->add_option("--points", f.points, "Points x..., t separated by ';'");

    for (auto* s : {vs, vb, so, pr, ct, sw, fl}) {
        b->subs[s->get_name()] = s;
    }
    return b;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError({"cannot read config file '" + path + "'"});
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

KeyValues collect(const std::string& command, const Flags& f)
{
    KeyValues kv = f.config.empty() ? KeyValues{} : parse_document(read_file(f.config));
    std::vector<std::string> errors;
    kv["command"] = command;
    const auto put = [&kv](const char* key, const std::optional<std::string>& v) {
        if (v) {
            kv[key] = *v;
        }
    };
    put("params.p", f.p);
    put("params.n", f.n);
    put("seed", f.seed);
    put("out", f.out);
    put("grid.h", f.h);
    put("grid.dt", f.dt);
    put("experiment.datum", f.datum);
    put("experiment.construction", f.construction);
    put("experiment.samples", f.samples);
    put("experiment.tol", f.tol);
    put("experiment.target", f.target);
    put("experiment.h_levels", f.h_levels);
    put("experiment.p_list", f.p_list);
    put("experiment.points", f.points);
    if (f.subquadratic) {
        kv["experiment.subquadratic"] = "true";
    }
    if (!f.domain.empty()) {
        const auto colon = f.domain.find(':');
        kv["domain.kind"] = f.domain.substr(0, colon);
        if (colon != std::string::npos) {
            std::istringstream rest(f.domain.substr(colon + 1));
            std::string item;
            while (std::getline(rest, item, ';')) {
                const auto eq = item.find('=');
                if (eq == std::string::npos) {
                    if (item.find_first_not_of(' ') != std::string::npos) {
                        errors.push_back("--domain: expected key=value, got '" + item + "'");
                    }
                    continue;
                }
                kv["domain." + item.substr(0, eq)] = item.substr(eq + 1);
            }
        }
    }
    for (const auto& s : f.set) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            errors.push_back("--set: expected section.key=value, got '" + s + "'");
            continue;
        }
        kv[s.substr(0, eq)] = s.substr(eq + 1);
    }
    if (!errors.empty()) {
        throw ConfigError(errors);
    }
    return kv;
}

}  // namespace

std::string help_text()
{
    auto b = build();
    return b->app.help("", CLI::AppFormatMode::All);
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    auto b = build();
    auto& app = b->app;
    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help("", CLI::AppFormatMode::All) : subs.front()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    ExperimentConfig config;
    try {
        config = build_config(collect(command, b->flags));
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return kExitConfig;
    }
    return run(config, out, err);
}

}  // namespace pparab::cli
