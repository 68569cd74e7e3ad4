#include "pparab/config.hpp"

#include "pparab/csv.hpp"
#include "pparab/expression.hpp"
#include "pparab/solutions.hpp"
#include "pparab/solver.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

namespace pparab {

namespace {

const std::vector<std::pair<Command, std::string>>& command_table()
{
    static const std::vector<std::pair<Command, std::string>> table{
        {Command::verify_solutions, "verify-solutions"},
        {Command::verify_barriers, "verify-barriers"},
        {Command::solve, "solve"},
        {Command::probe_regularity, "probe-regularity"},
        {Command::cylinder_top, "cylinder-top"},
        {Command::sweep_p, "sweep-p"},
        {Command::fundamental_limit, "fundamental-limit"},
    };
    return table;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::optional<double> to_double(const std::string& raw)
{
    const std::string s = trim(raw);
    if (s == "inf" || s == "infinity" || s == "+inf") {
        return kInfinity;
    }
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return v;
}

template <class Int>
std::optional<Int> to_int(const std::string& raw)
{
    const std::string s = trim(raw);
    Int v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return v;
}

std::optional<std::vector<double>> to_list(const std::string& raw)
{
    std::vector<double> out;
    if (trim(raw).empty()) {
        return out;
    }
    for (const auto& item : split(raw, ',')) {
        const auto v = to_double(item);
        if (!v) {
            return std::nullopt;
        }
        out.push_back(*v);
    }
    return out;
}

std::string render_list(const std::vector<double>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? ", " : "") + format_double(v[i]);
    }
    return out;
}

using Setter = std::function<std::optional<std::string>(ExperimentConfig&, const std::string&)>;
using Getter = std::function<std::string(const ExperimentConfig&)>;

struct Field {
    std::string key;
    Setter set;
    Getter get;
};

template <class F>
Field real(std::string key, F ref)
{
    return {std::move(key),
            [ref](ExperimentConfig& c, const std::string& v) -> std::optional<std::string> {
                const auto d = to_double(v);
                if (!d) {
                    return "expected a number, got '" + trim(v) + "'";
                }
                ref(c) = *d;
                return std::nullopt;
            },
            [ref](const ExperimentConfig& c) { return format_double(ref(c)); }};
}

template <class Int, class F>
Field integer(std::string key, F ref)
{
    return {std::move(key),
            [ref](ExperimentConfig& c, const std::string& v) -> std::optional<std::string> {
                const auto d = to_int<Int>(v);
                if (!d) {
                    return "expected an integer, got '" + trim(v) + "'";
                }
                ref(c) = *d;
                return std::nullopt;
            },
            [ref](const ExperimentConfig& c) { return std::to_string(ref(c)); }};
}

template <class F>
Field boolean(std::string key, F ref)
{
    return {std::move(key),
            [ref](ExperimentConfig& c, const std::string& v) -> std::optional<std::string> {
                const std::string s = trim(v);
                if (s == "true" || s == "1" || s == "yes") {
                    ref(c) = true;
                } else if (s == "false" || s == "0" || s == "no") {
                    ref(c) = false;
                } else {
                    return "expected true or false, got '" + s + "'";
                }
                return std::nullopt;
            },
            [ref](const ExperimentConfig& c) { return std::string(ref(c) ? "true" : "false"); }};
}

template <class F>
Field text(std::string key, F ref)
{
    return {std::move(key),
            [ref](ExperimentConfig& c, const std::string& v) -> std::optional<std::string> {
                ref(c) = trim(v);
                return std::nullopt;
            },
            [ref](const ExperimentConfig& c) { return ref(c); }};
}

template <class F>
Field list(std::string key, F ref)
{
    return {std::move(key),
            [ref](ExperimentConfig& c, const std::string& v) -> std::optional<std::string> {
                const auto l = to_list(v);
                if (!l) {
                    return "expected a comma-separated list of numbers, got '" + trim(v) + "'";
                }
                ref(c) = *l;
                return std::nullopt;
            },
            [ref](const ExperimentConfig& c) { return render_list(ref(c)); }};
}

const std::vector<Field>& fields()
{
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back({"command",
                     [](ExperimentConfig& c, const std::string& v) -> std::optional<std::string> {
                         const auto cmd = parse_command(trim(v));
                         if (!cmd) {
                             return "unknown command '" + trim(v) + "'";
                         }
                         c.command = *cmd;
                         return std::nullopt;
                     },
                     [](const ExperimentConfig& c) { return std::string(to_string(c.command)); }});
        f.push_back(integer<std::uint64_t>("seed", [](auto& c) -> auto& { return c.seed; }));
        f.push_back(text("out", [](auto& c) -> auto& { return c.out; }));

        f.push_back(real("params.p", [](auto& c) -> auto& { return c.p; }));
        f.push_back(integer<int>("params.n", [](auto& c) -> auto& { return c.n; }));

        f.push_back(text("domain.kind", [](auto& c) -> auto& { return c.domain.kind; }));
        f.push_back(list("domain.lo", [](auto& c) -> auto& { return c.domain.lo; }));
        f.push_back(list("domain.hi", [](auto& c) -> auto& { return c.domain.hi; }));
        f.push_back(real("domain.t0", [](auto& c) -> auto& { return c.domain.t0; }));
        f.push_back(real("domain.t1", [](auto& c) -> auto& { return c.domain.t1; }));
        f.push_back(list("domain.center", [](auto& c) -> auto& { return c.domain.center; }));
        f.push_back(real("domain.center_t", [](auto& c) -> auto& { return c.domain.center_t; }));
        f.push_back(real("domain.radius", [](auto& c) -> auto& { return c.domain.radius; }));
        f.push_back(boolean("domain.exterior", [](auto& c) -> auto& { return c.domain.exterior; }));
        f.push_back(real("domain.factor", [](auto& c) -> auto& { return c.domain.factor; }));
        f.push_back(real("domain.c", [](auto& c) -> auto& { return c.domain.c; }));
        f.push_back(real("domain.level", [](auto& c) -> auto& { return c.domain.level; }));
        f.push_back(list("domain.apex", [](auto& c) -> auto& { return c.domain.apex; }));
        f.push_back(real("domain.apex_t", [](auto& c) -> auto& { return c.domain.apex_t; }));
        f.push_back(text("domain.expression", [](auto& c) -> auto& { return c.domain.expression; }));

        f.push_back(real("grid.h", [](auto& c) -> auto& { return c.h; }));
        f.push_back(real("grid.dt", [](auto& c) -> auto& { return c.dt; }));

        f.push_back(text("experiment.datum", [](auto& c) -> auto& { return c.datum; }));
        f.push_back(list("experiment.slices", [](auto& c) -> auto& { return c.slices; }));
        f.push_back(boolean("experiment.subquadratic",
                            [](auto& c) -> auto& { return c.experimental_subquadratic; }));
        f.push_back(integer<int>("experiment.samples", [](auto& c) -> auto& { return c.samples; }));
        f.push_back(real("experiment.tol", [](auto& c) -> auto& { return c.tol; }));
        f.push_back(text("experiment.construction", [](auto& c) -> auto& { return c.construction; }));
        f.push_back(real("experiment.barrier_c", [](auto& c) -> auto& { return c.barrier_c; }));
        f.push_back(real("experiment.c_time", [](auto& c) -> auto& { return c.c_time; }));
        f.push_back(real("experiment.eps1", [](auto& c) -> auto& { return c.eps1; }));
        f.push_back(real("experiment.k", [](auto& c) -> auto& { return c.k; }));
        f.push_back(real("experiment.m", [](auto& c) -> auto& { return c.m; }));
        f.push_back(real("experiment.target_eps", [](auto& c) -> auto& { return c.target_eps; }));
        f.push_back(list("experiment.sphere_center", [](auto& c) -> auto& { return c.sphere_center; }));
        f.push_back(real("experiment.sphere_center_t", [](auto& c) -> auto& { return c.sphere_center_t; }));
        f.push_back(real("experiment.sphere_radius", [](auto& c) -> auto& { return c.sphere_radius; }));
        f.push_back(list("experiment.contact", [](auto& c) -> auto& { return c.contact; }));
        f.push_back(real("experiment.sphere_a", [](auto& c) -> auto& { return c.sphere_a; }));
        f.push_back(list("experiment.target", [](auto& c) -> auto& { return c.target; }));
        f.push_back(list("experiment.approach", [](auto& c) -> auto& { return c.approach; }));
        f.push_back(list("experiment.h_levels", [](auto& c) -> auto& { return c.h_levels; }));
        f.push_back(real("experiment.gap_tol", [](auto& c) -> auto& { return c.gap_tol; }));
        f.push_back(real("experiment.irr_floor", [](auto& c) -> auto& { return c.irr_floor; }));
        f.push_back(real("experiment.distance_in_h", [](auto& c) -> auto& { return c.distance_in_h; }));
        f.push_back(real("experiment.eps", [](auto& c) -> auto& { return c.eps; }));
        f.push_back(real("experiment.min_gap", [](auto& c) -> auto& { return c.min_gap; }));
        f.push_back(list("experiment.p_list", [](auto& c) -> auto& { return c.p_list; }));
        // Points are separated by ';', coordinates by ','.
        f.push_back({"experiment.points",
                     [](ExperimentConfig& c, const std::string& v) -> std::optional<std::string> {
                         c.points.clear();
                         if (trim(v).empty()) {
                             return std::nullopt;
                         }
                         for (const auto& group : split(v, ';')) {
                             const auto l = to_list(group);
                             if (!l || l->empty()) {
                                 return "expected points 'x..., t; x..., t', got '" + trim(v) + "'";
                             }
                             c.points.push_back(*l);
                         }
                         return std::nullopt;
                     },
                     [](const ExperimentConfig& c) {
                         std::string out;
                         for (std::size_t i = 0; i < c.points.size(); ++i) {
                             out += (i ? "; " : "") + render_list(c.points[i]);
                         }
                         return out;
                     }});
        return f;
    }();
    return table;
}

const Field* find_field(const std::string& key)
{
    for (const auto& f : fields()) {
        if (f.key == key) {
            return &f;
        }
    }
    return nullptr;
}

bool uses_grid(Command c)
{
    return c == Command::solve || c == Command::sweep_p || c == Command::cylinder_top;
}

bool uses_domain(Command c)
{
    return c == Command::solve || c == Command::sweep_p || c == Command::probe_regularity;
}

/// Broadcasts a single value (or fills an empty list with `fill`) to length n.
void fit(std::vector<double>& v, int n, double fill, const std::string& key, std::vector<std::string>& errors)
{
    if (v.empty()) {
        v.assign(static_cast<std::size_t>(n), fill);
    } else if (v.size() == 1 && n > 1) {
        v.assign(static_cast<std::size_t>(n), v[0]);
    } else if (static_cast<int>(v.size()) != n) {
        errors.push_back(key + ": expected " + std::to_string(n) + " values, got " + std::to_string(v.size()));
    }
}

void validate_datum(const ExperimentConfig& c, const std::optional<PParams>& params, std::vector<std::string>& errors)
{
    const std::string& d = c.datum;
    if (d == "distance") {
        return;
    }
    const auto colon = d.find(':');
    const std::string kind = d.substr(0, colon);
    const std::string arg = colon == std::string::npos ? std::string() : d.substr(colon + 1);
    if (kind == "constant") {
        if (!to_double(arg)) {
            errors.push_back("experiment.datum: constant:<v> needs a number");
        }
    } else if (kind == "exact") {
        if (params) {
            try {
                (void)catalog_entry(trim(arg), *params);
            } catch (const std::exception& e) {
                errors.push_back("experiment.datum: " + std::string(e.what()));
            }
        }
    } else if (kind == "expression") {
        try {
            (void)Expression::parse(arg, c.n);
        } catch (const ParseError& e) {
            errors.push_back("experiment.datum: " + std::string(e.what()));
        }
    } else {
        errors.push_back("experiment.datum: expected distance, constant:<v>, exact:<label> or expression:<text>");
    }
}

void validate_domain(ExperimentConfig& c, const std::optional<PParams>& params, std::vector<std::string>& errors)
{
    auto& d = c.domain;
    const int n = std::max(c.n, 1);
    fit(d.lo, n, -1.0, "domain.lo", errors);
    fit(d.hi, n, 1.0, "domain.hi", errors);
    fit(d.center, n, 0.0, "domain.center", errors);
    fit(d.apex, n, 0.0, "domain.apex", errors);
    const bool boxed = d.kind == "cylinder" || d.kind == "custom-expression" || (d.kind == "ball" && d.exterior);
    if (boxed) {
        for (std::size_t i = 0; i < std::min(d.lo.size(), d.hi.size()); ++i) {
            if (!(d.lo[i] < d.hi[i])) {
                errors.push_back("domain.lo < domain.hi must hold in every coordinate");
                break;
            }
        }
        if (!(d.t0 < d.t1)) {
            errors.push_back("domain.t0 < domain.t1 must hold");
        }
    }
    if (d.kind == "ball") {
        if (!(d.radius > 0.0)) {
            errors.push_back("domain.radius must be positive");
        }
    } else if (d.kind == "petrovsky") {
        if (!(d.factor >= 1.0)) {
            errors.push_back("domain.factor must satisfy factor >= 1");
        }
        if (!(d.c > 0.0 && d.c < std::exp(-1.0))) {
            errors.push_back(
                "domain.c must satisfy 0 < c < 1/e so that log|log|t|| > 0 on the slab -c < t < 0 "
                "(whether the construction extends to 1/e <= c < 1 is an open question)");
        }
    } else if (d.kind == "heatball") {
        if (!(d.level > 0.0)) {
            errors.push_back("domain.level must be positive");
        }
        if (params && params->infinite()) {
            errors.push_back("domain.kind = heatball requires finite p");
        }
    } else if (d.kind == "custom-expression") {
        try {
            (void)Expression::parse(d.expression, n);
        } catch (const ParseError& e) {
            errors.push_back("domain.expression: " + std::string(e.what()));
        }
    } else if (d.kind != "cylinder") {
        errors.push_back("domain.kind: expected cylinder, ball, petrovsky, heatball or custom-expression, got '" +
                         d.kind + "'");
    }
}

}  // namespace

const char* to_string(Command c)
{
    for (const auto& [cmd, name] : command_table()) {
        if (cmd == c) {
            return name.c_str();
        }
    }
    return "?";
}

std::optional<Command> parse_command(const std::string& name)
{
    for (const auto& [cmd, n] : command_table()) {
        if (n == name) {
            return cmd;
        }
    }
    return std::nullopt;
}

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : command_table()) {
            out.push_back(e.second);
        }
        return out;
    }();
    return names;
}

namespace {

std::string join_errors(const std::vector<std::string>& errors)
{
    std::string out = "invalid configuration:";
    for (const auto& e : errors) {
        out += "\n  " + e;
    }
    return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors))
{
}

const std::vector<std::string>& known_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> out;
        for (const auto& f : fields()) {
            out.push_back(f.key);
        }
        return out;
    }();
    return keys;
}

KeyValues parse_document(const std::string& text)
{
    KeyValues kv;
    std::vector<std::string> errors;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') {
            continue;
        }
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (s.front() == '[') {
            if (s.back() != ']' || s.size() < 3) {
                errors.push_back(where + "malformed section header '" + s + "'");
                continue;
            }
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            errors.push_back(where + "expected 'key = value', got '" + s + "'");
            continue;
        }
        const std::string key = trim(s.substr(0, eq));
        if (key.empty()) {
            errors.push_back(where + "empty key");
            continue;
        }
        const std::string full = section.empty() ? key : section + "." + key;
        if (!kv.emplace(full, trim(s.substr(eq + 1))).second) {
            errors.push_back(where + "duplicate key '" + full + "'");
        }
    }
    if (!errors.empty()) {
        throw ConfigError(errors);
    }
    return kv;
}

ExperimentConfig build_config(const KeyValues& kv)
{
    ExperimentConfig c;
    std::vector<std::string> errors;
    for (const auto& [key, value] : kv) {
        const Field* f = find_field(key);
        if (!f) {
            errors.push_back("unknown key '" + key + "'");
            continue;
        }
        if (auto err = f->set(c, value)) {
            errors.push_back(key + ": " + *err);
        }
    }
    for (const char* req : {"command", "params.p", "params.n"}) {
        if (!kv.contains(req)) {
            errors.push_back(std::string("missing required key '") + req + "'");
        }
    }
    if (uses_domain(c.command) && !kv.contains("domain.kind")) {
        errors.push_back(std::string("missing required key 'domain.kind' for ") + to_string(c.command));
    }
    if (uses_grid(c.command) && !kv.contains("grid.h")) {
        errors.push_back(std::string("missing required key 'grid.h' for ") + to_string(c.command));
    }

    std::optional<PParams> params;
    if (!(c.p > 1.0)) {
        errors.push_back("params.p: the rule 1 < p is violated (p = " + format_double(c.p) + ")");
    } else if (c.n < 1) {
        errors.push_back("params.n: the rule n >= 1 is violated");
    } else {
        params = make_params(c.p, c.n);
    }
    const int n = std::max(c.n, 1);

    if (!(c.h > 0.0)) {
        errors.push_back("grid.h must be positive");
    }
    if (kv.contains("grid.dt")) {
        if (!(c.dt > 0.0)) {
            errors.push_back("grid.dt must be positive");
        }
    } else if (params && c.h > 0.0) {
        c.dt = cfl_max_dt(c.h, *params);
    }
    if (c.samples < 1) {
        errors.push_back("experiment.samples must be positive");
    }
    if (!(c.tol > 0.0)) {
        errors.push_back("experiment.tol must be positive");
    }

    validate_domain(c, params, errors);

    switch (c.command) {
    case Command::verify_solutions:
        break;
    case Command::verify_barriers:
        if (c.samples < 100) {
            errors.push_back("experiment.samples: verify-barriers needs samples >= 100");
        }
        if (c.construction == "petrovsky") {
            if (!(c.barrier_c > 0.0 && c.barrier_c < 1.0)) {
                errors.push_back("experiment.barrier_c must satisfy 0 < c < 1");
            }
            if (c.c_time != 0.0 && !(c.c_time > 0.0 && c.c_time < std::exp(-1.0))) {
                errors.push_back("experiment.c_time must satisfy 0 < c_time < 1/e (0 selects the default slab)");
            }
        } else if (c.construction == "sphere") {
            fit(c.sphere_center, n, 0.0, "experiment.sphere_center", errors);
            if (!(c.sphere_radius > 0.0)) {
                errors.push_back("experiment.sphere_radius must be positive");
            }
            if (c.contact.empty() && static_cast<int>(c.sphere_center.size()) == n) {
                // Equatorial contact along the first axis.
                c.contact = c.sphere_center;
                c.contact[0] += c.sphere_radius;
                c.contact.push_back(c.sphere_center_t);
            }
            if (static_cast<int>(c.contact.size()) != n + 1) {
                errors.push_back("experiment.contact: expected n + 1 values (x..., t)");
            }
            if (c.sphere_a < 0.0) {
                errors.push_back("experiment.sphere_a must be >= 0 (0 selects a automatically)");
            }
        } else if (c.construction == "irregularity") {
            if (!(c.eps1 > 0.0)) {
                errors.push_back("experiment.eps1 must be positive");
            }
            if (!(c.k > 0.5 && c.k < 1.0)) {
                errors.push_back("experiment.k must satisfy 1/2 < k < 1");
            }
            if (!(c.m < 0.0)) {
                errors.push_back("experiment.m must be negative");
            }
            if (c.target_eps < 0.0) {
                errors.push_back("experiment.target_eps must be >= 0 (0 disables the containment check)");
            }
            if (params && params->infinite()) {
                errors.push_back("experiment.construction = irregularity requires finite p");
            }
        } else {
            errors.push_back("experiment.construction: expected sphere, petrovsky or irregularity, got '" +
                             c.construction + "'");
        }
        break;
    case Command::solve:
        validate_datum(c, params, errors);
        if (params && !params->infinite() && c.p < 2.0 && !c.experimental_subquadratic) {
            errors.push_back("params.p: the solver requires p >= 2 unless experiment.subquadratic = true");
        }
        break;
    case Command::probe_regularity: {
        if (c.target.empty()) {
            if (c.domain.kind == "petrovsky") {
                c.target.assign(static_cast<std::size_t>(n) + 1, 0.0);
            } else if (c.domain.kind == "heatball") {
                c.target = c.domain.apex;
                c.target.push_back(c.domain.apex_t);
            } else {
                errors.push_back("experiment.target is required for domain.kind = " + c.domain.kind);
            }
        }
        if (!c.target.empty() && static_cast<int>(c.target.size()) != n + 1) {
            errors.push_back("experiment.target: expected n + 1 values (x..., t)");
        }
        if (!c.approach.empty() && static_cast<int>(c.approach.size()) != n + 1) {
            errors.push_back("experiment.approach: expected n + 1 values (x..., t)");
        }
        bool decreasing = c.h_levels.size() >= 3;
        for (std::size_t i = 0; i < c.h_levels.size(); ++i) {
            decreasing = decreasing && c.h_levels[i] > 0.0 && (i == 0 || c.h_levels[i] < c.h_levels[i - 1]);
        }
        if (!decreasing) {
            errors.push_back("experiment.h_levels must be positive, strictly decreasing, with at least 3 entries");
        }
        if (!(c.gap_tol > 0.0) || !(c.irr_floor > 0.0)) {
            errors.push_back("experiment.gap_tol and experiment.irr_floor must be positive");
        }
        if (!(c.distance_in_h > 0.0)) {
            errors.push_back("experiment.distance_in_h must be positive");
        }
        if (params && !params->infinite() && c.p < 2.0) {
            errors.push_back("params.p: probe-regularity requires p >= 2");
        }
        break;
    }
    case Command::cylinder_top:
        validate_datum(c, params, errors);
        if (c.domain.kind != "cylinder") {
            errors.push_back("domain.kind: cylinder-top requires a cylinder");
        }
        if (!(c.eps > 0.0)) {
            errors.push_back("experiment.eps: the rule eps > 0 is violated");
        }
        if (!(c.min_gap > 0.0)) {
            errors.push_back("experiment.min_gap must be positive");
        }
        if (params && !params->infinite() && c.p < 2.0) {
            errors.push_back("params.p: cylinder-top requires p >= 2");
        }
        break;
    case Command::sweep_p:
        validate_datum(c, params, errors);
        if (c.p_list.empty()) {
            errors.push_back("experiment.p_list must not be empty");
        }
        for (double q : c.p_list) {
            if (!(q >= 2.0) || !std::isfinite(q)) {
                errors.push_back("experiment.p_list: every entry must be finite and >= 2");
                break;
            }
        }
        break;
    case Command::fundamental_limit:
        if (c.p_list.empty()) {
            errors.push_back("experiment.p_list must not be empty");
        }
        for (double q : c.p_list) {
            if (!(q > 1.0) || !std::isfinite(q)) {
                errors.push_back("experiment.p_list: every entry must be finite with 1 < p");
                break;
            }
        }
        if (c.points.empty()) {
            errors.push_back("experiment.points must list at least one point");
        }
        for (const auto& pt : c.points) {
            if (static_cast<int>(pt.size()) != n + 1 || !(pt.back() > 0.0)) {
                errors.push_back("experiment.points: each point needs n + 1 values (x..., t) with t > 0");
                break;
            }
        }
        break;
    }

    if (!errors.empty()) {
        throw ConfigError(errors);
    }
    return c;
}

ExperimentConfig parse_config(const std::string& text)
{
    return build_config(parse_document(text));
}

std::string render(const ExperimentConfig& config)
{
    std::string out;
    std::string section;
    for (const auto& f : fields()) {
        const auto dot = f.key.find('.');
        const std::string sec = dot == std::string::npos ? std::string() : f.key.substr(0, dot);
        const std::string key = dot == std::string::npos ? f.key : f.key.substr(dot + 1);
        if (sec != section) {
            out += "\n[" + sec + "]\n";
            section = sec;
        }
        out += key + " = " + f.get(config) + "\n";
    }
    return out;
}

Domain make_domain(const ExperimentConfig& config)
{
    const auto& d = config.domain;
    const auto vec = [](const std::vector<double>& v) { return Vec(Eigen::Map<const Vec>(v.data(), v.size())); };
    const SpaceTimeBox box{vec(d.lo), vec(d.hi), d.t0, d.t1};
    if (d.kind == "cylinder") {
        return cylinder(box.lo, box.hi, d.t0, d.t1);
    }
    if (d.kind == "ball") {
        return d.exterior ? ball_exterior(vec(d.center), d.center_t, d.radius, box)
                          : spacetime_ball(vec(d.center), d.center_t, d.radius);
    }
    if (d.kind == "petrovsky") {
        return petrovsky_domain(d.factor, d.c, config.params());
    }
    if (d.kind == "heatball") {
        return heat_ball(d.level, vec(d.apex), d.apex_t, config.params());
    }
    if (d.kind == "custom-expression") {
        return expression_domain(Expression::parse(d.expression, config.n), box);
    }
    throw DomainError("unknown domain kind '" + d.kind + "'");
}

}  // namespace pparab
