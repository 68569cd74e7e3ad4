#pragma once

#include "pparab/domain.hpp"
#include "pparab/params.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pparab {

enum class Command {
    verify_solutions,
    verify_barriers,
    solve,
    probe_regularity,
    cylinder_top,
    sweep_p,
    fundamental_limit,
};

const char* to_string(Command c);
std::optional<Command> parse_command(const std::string& name);
const std::vector<std::string>& command_names();

struct DomainConfig {
    /// cylinder | ball | petrovsky | heatball | custom-expression
    std::string kind = "cylinder";
    /// Spatial box (cylinder, ball with exterior = true, custom-expression).
    std::vector<double> lo;
    std::vector<double> hi;
    double t0 = 0.0;
    double t1 = 1.0;
    std::vector<double> center;
    double center_t = 0.0;
    double radius = 1.0;
    /// ball: the complement of the closed ball inside the box.
    bool exterior = false;
    double factor = 1.0;
    /// petrovsky: slab -c < t < 0.
    double c = 0.3;
    double level = 1.0;
    std::vector<double> apex;
    double apex_t = 0.0;
    std::string expression;

    bool operator==(const DomainConfig&) const = default;
};

struct ExperimentConfig {
    Command command = Command::solve;
    double p = 2.0;
    int n = 1;
    DomainConfig domain;
    double h = 0.1;
    /// Filled with the CFL bound when absent from the document.
    double dt = 0.0;
    /// CSV path; empty writes the CSV to standard output.
    std::string out;
    std::uint64_t seed = 0;

    // solve, cylinder-top, sweep-p
    /// distance | constant:v | exact:<label> | expression:<text>
    std::string datum = "distance";
    /// solve: times whose slices are written; empty means the last slice.
    std::vector<double> slices;
    bool experimental_subquadratic = false;

    // verify-solutions, verify-barriers
    int samples = 200;
    double tol = 1e-8;
    /// sphere | petrovsky | irregularity
    std::string construction = "petrovsky";
    double barrier_c = 0.5;
    /// Petrovsky barrier slab; 0 selects e^{-e²}.
    double c_time = 0.0;
    double eps1 = 0.2;
    double k = 0.9;
    double m = -0.5;
    /// Irregularity containment target; 0 disables the check.
    double target_eps = 0.0;
    std::vector<double> sphere_center;
    double sphere_center_t = 0.0;
    double sphere_radius = 1.0;
    /// Contact point (x..., t).
    std::vector<double> contact;
    /// Barrier constant a; 0 selects it from the sufficient condition.
    double sphere_a = 0.0;

    // probe-regularity
    /// Target (x..., t).
    std::vector<double> target;
    /// Approach direction (x..., t); empty means backwards in time.
    std::vector<double> approach;
    std::vector<double> h_levels{0.04, 0.02, 0.01};
    double gap_tol = 0.05;
    double irr_floor = 0.15;
    double distance_in_h = 2.0;

    // cylinder-top
    double eps = 0.1;
    double min_gap = 0.25;

    // sweep-p, fundamental-limit
    std::vector<double> p_list{10.0, 100.0, 1000.0};
    /// fundamental-limit sample points, each (x..., t).
    std::vector<std::vector<double>> points;

    [[nodiscard]] PParams params() const { return make_params(p, n); }
    bool operator==(const ExperimentConfig&) const = default;
};

/// All problems found in a document, one message per problem.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> errors);
    [[nodiscard]] const std::vector<std::string>& errors() const { return errors_; }

private:
    std::vector<std::string> errors_;
};

/// "section.key" (top-level keys have no section) to raw value.
using KeyValues = std::map<std::string, std::string>;

/// Splits a document into keys. Lines are `key = value`, `[section]`
/// headers, blanks and `#` comments. Throws ConfigError on malformed lines
/// and duplicate keys.
KeyValues parse_document(const std::string& text);

/// Types, defaults and validates. Throws ConfigError listing every problem.
ExperimentConfig build_config(const KeyValues& kv);

/// build_config(parse_document(text)).
ExperimentConfig parse_config(const std::string& text);

/// Document that parses back to the same config.
std::string render(const ExperimentConfig& config);

/// Every key build_config accepts, in render order.
const std::vector<std::string>& known_keys();

/// Domain built from the config's domain section.
Domain make_domain(const ExperimentConfig& config);

}  // namespace pparab
