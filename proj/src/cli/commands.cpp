#include "pparab/barriers.hpp"
#include "pparab/cli.hpp"
#include "pparab/csv.hpp"
#include "pparab/expression.hpp"
#include "pparab/lab.hpp"
#include "pparab/solutions.hpp"
#include "pparab/solver.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>

namespace pparab::cli {

namespace {

Vec to_vec(const std::vector<double>& v, std::size_t count)
{
    Vec out(static_cast<Eigen::Index>(count));
    for (std::size_t i = 0; i < count; ++i) {
        out(static_cast<Eigen::Index>(i)) = v[i];
    }
    return out;
}

Point to_point(const std::vector<double>& v)
{
    return {to_vec(v, v.size() - 1), v.back()};
}

std::vector<std::string> coord_header(int n)
{
    std::vector<std::string> h;
    for (int i = 1; i <= n; ++i) {
        h.push_back("x" + std::to_string(i));
    }
    return h;
}

ScalarField make_datum(const ExperimentConfig& c)
{
    const std::string& d = c.datum;
    const auto colon = d.find(':');
    const std::string kind = d.substr(0, colon);
    const std::string arg = colon == std::string::npos ? std::string() : d.substr(colon + 1);
    if (kind == "constant") {
        const double v = std::stod(arg);
        return [v](const Point&) { return v; };
    }
    if (kind == "exact") {
        auto s = std::make_shared<Solution>(catalog_entry(arg.substr(arg.find_first_not_of(' ')), c.params()));
        return [s](const Point& p) { return s->value(p); };
    }
    if (kind == "expression") {
        return [e = Expression::parse(arg, c.n)](const Point& p) { return e(p); };
    }
    const Point target = c.target.empty() ? Point(Vec::Zero(c.n), 0.0) : to_point(c.target);
    return [target](const Point& p) {
        const double dt = p.t - target.t;
        return std::min(1.0, std::sqrt((p.x - target.x).squaredNorm() + dt * dt));
    };
}

std::string flag(bool b)
{
    return b ? "true" : "false";
}

int verify_solutions_cmd(const ExperimentConfig& c, std::ostream& csv, std::ostream& out)
{
    const PParams params = c.params();
    const auto rows = verify_solutions(params, c.samples, c.seed);
    CsvWriter w(csv, {"label", "p", "n", "max_residual", "jet_ratio"});
    bool ok = true;
    out << "# " << std::left << std::setw(24) << "label" << std::setw(9) << "samples" << std::setw(14)
        << "max_residual" << std::setw(14) << "fd_residual" << "jet_ratio\n";
    for (const auto& r : rows) {
        w.row({r.label, r.p, static_cast<long long>(r.n), r.max_residual, r.jet_ratio});
        ok = ok && r.max_residual < c.tol;
        out << "# " << std::left << std::setw(24) << r.label << std::setw(9) << r.samples << std::setw(14)
            << format_double(r.max_residual).substr(0, 12) << std::setw(14)
            << format_double(r.max_fd_residual).substr(0, 12) << format_double(r.jet_ratio).substr(0, 8) << "\n";
    }
    for (const auto& s : catalog(params).skipped) {
        out << "# skipped " << s.label << ": " << s.reason << "\n";
    }
    out << "# " << (ok ? "all residuals below " : "residual above ") << format_double(c.tol) << "\n";
    return ok ? kExitOk : kExitFailure;
}

int verify_barriers_cmd(const ExperimentConfig& c, std::ostream& csv, std::ostream& out)
{
    const PParams params = c.params();
    BarrierReport r;
    std::string label;
    if (c.construction == "irregularity") {
        const auto target = c.target_eps > 0.0 ? std::optional<double>(c.target_eps) : std::nullopt;
        const auto witness = irregularity_subsolution(c.eps1, c.k, c.m, params, target);
        r = verify_barrier(witness, c.samples, c.tol, c.seed);
        label = witness.barrier.label;
        out << "# slab start log|log|t|| >= " << format_double(witness.log_log_start) << "\n";
    } else {
        Barrier b;
        if (c.construction == "petrovsky") {
            b = petrovsky_barrier(c.barrier_c, params, c.c_time > 0.0 ? c.c_time : default_petrovsky_slab());
        } else {
            const Vec center = to_vec(c.sphere_center, c.sphere_center.size());
            const Point contact = to_point(c.contact);
            b = c.sphere_a > 0.0 ? exterior_sphere_barrier_unchecked(center, c.sphere_center_t, c.sphere_radius,
                                                                     contact, c.sphere_a, params)
                                 : exterior_sphere_barrier(center, c.sphere_center_t, c.sphere_radius, contact, params);
        }
        r = verify_barrier(b, c.samples, c.tol, c.seed);
        label = b.label;
        for (const auto& [k, v] : b.constants) {
            out << "# " << k << " = " << format_double(v) << "\n";
        }
    }
    CsvWriter w(csv, {"construction", "p", "n", "positivity_ok", "boundary_liminf_ok", "vanishing_at_target_ok",
                      "supersolution_ok", "worst_violation", "sample_count", "boundary_floor", "identity_gap"});
    w.row({c.construction, params.p, static_cast<long long>(params.n), flag(r.positivity_ok),
           flag(r.boundary_liminf_ok), flag(r.vanishing_at_target_ok), flag(r.supersolution_ok), r.worst_violation,
           static_cast<long long>(r.sample_count), r.boundary_floor, r.identity_gap});
    out << "# " << label << ": positivity " << flag(r.positivity_ok) << ", boundary liminf "
        << flag(r.boundary_liminf_ok) << ", vanishing at target " << flag(r.vanishing_at_target_ok)
        << ", sign condition " << flag(r.supersolution_ok) << "\n";
    if (!r.witness.empty()) {
        out << "# witness: " << r.witness << "\n";
    }
    return r.all_ok() ? kExitOk : kExitFailure;
}

int solve_cmd(const ExperimentConfig& c, std::ostream& csv, std::ostream& out)
{
    const PParams params = c.params();
    const Domain domain = make_domain(c);
    const GridSpec spec{c.h, c.dt, domain.bbox};
    SolveOptions opts;
    opts.experimental_subquadratic = c.experimental_subquadratic;
    const GridSolution g = solve(domain, make_datum(c), spec, params, opts);

    std::vector<int> slices;
    for (double t : c.slices) {
        const int k = static_cast<int>(std::lround((t - spec.bbox.t0) / spec.dt));
        slices.push_back(std::clamp(k, 0, g.slice_count - 1));
    }
    if (slices.empty()) {
        slices.push_back(g.slice_count - 1);
    }
    auto header = coord_header(params.n);
    header.insert(header.begin(), "t");
    header.push_back("u");
    CsvWriter w(csv, header);
    for (int k : slices) {
        for (int i = 0; i < g.node_count; ++i) {
            if (g.cls(i, k) == NodeClass::exterior) {
                continue;
            }
            std::vector<CsvCell> row{g.time(k)};
            const Vec x = g.position(i);
            for (int d = 0; d < params.n; ++d) {
                row.emplace_back(x(d));
            }
            row.emplace_back(g.value(i, k));
            w.row(row);
        }
    }
    out << "# " << domain.label << ": h = " << format_double(c.h) << ", dt = " << format_double(c.dt) << ", "
        << g.slice_count << " slices\n";
    out << "# max principle violation " << format_double(max_principle_violation(g)) << "\n";
    if (c.datum.rfind("exact:", 0) == 0) {
        const auto e = error_vs(g, catalog_entry(c.datum.substr(6), params));
        out << "# error vs exact: linf " << format_double(e.linf) << ", l2 " << format_double(e.l2) << " over "
            << e.n_interior << " interior nodes\n";
    }
    return kExitOk;
}

int probe_cmd(const ExperimentConfig& c, std::ostream& csv, std::ostream& out)
{
    const PParams params = c.params();
    const Domain domain = make_domain(c);
    ProbeOptions opts;
    opts.distance_in_h = c.distance_in_h;
    if (!c.approach.empty()) {
        opts.approach_x = to_vec(c.approach, c.approach.size() - 1);
        opts.approach_t = c.approach.back();
    }
    const auto r = probe_regularity(domain, to_point(c.target), params, c.h_levels, c.gap_tol, c.irr_floor, opts);
    auto header = std::vector<std::string>{"h", "approach_value", "gap", "probe_t"};
    for (const auto& s : coord_header(params.n)) {
        header.push_back("probe_" + s);
    }
    CsvWriter w(csv, header);
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
        const auto& lv = r.levels[i];
        std::vector<CsvCell> row{lv.h, lv.approach_value, r.gap_sequence[i], lv.probe.t};
        for (int d = 0; d < params.n; ++d) {
            row.emplace_back(lv.probe.x(d));
        }
        w.row(row);
    }
    out << "# " << domain.label << ", datum min(1, distance to target)\n";
    out << "# gaps";
    for (double g : r.gap_sequence) {
        out << " " << format_double(g);
    }
    out << "\n# verdict " << to_string(r.verdict) << "\n";
    return kExitOk;
}

int cylinder_top_cmd(const ExperimentConfig& c, std::ostream& csv, std::ostream& out)
{
    const auto& d = c.domain;
    const auto r = cylinder_top_experiment(to_vec(d.lo, d.lo.size()), to_vec(d.hi, d.hi.size()), d.t0, d.t1,
                                           c.params(), c.h, c.eps, make_datum(c), c.min_gap);
    CsvWriter w(csv, {"interiors_identical", "samples", "min_residual", "worst_defect", "bracket_width", "eps"});
    w.row({flag(r.interiors_identical), static_cast<long long>(r.samples), r.min_residual, r.worst_defect,
           r.bracket_width, r.eps});
    out << "# top data irrelevant: " << flag(r.interiors_identical) << "\n";
    out << "# bracket residual positive: " << flag(r.bracket_ok()) << " (min " << format_double(r.min_residual)
        << ", O(h) defect " << format_double(r.worst_defect) << ")\n";
    return r.interiors_identical && r.bracket_ok() ? kExitOk : kExitFailure;
}

int sweep_cmd(const ExperimentConfig& c, std::ostream& csv, std::ostream& out)
{
    const auto rows = sweep_p(make_domain(c), make_datum(c), c.h, c.p_list, c.n);
    CsvWriter w(csv, {"p", "h", "linf_gap_to_infty"});
    for (const auto& r : rows) {
        w.row({r.p, r.h, r.linf_gap_to_infty});
        out << "# p = " << format_double(r.p) << ": gap " << format_double(r.linf_gap_to_infty) << "\n";
    }
    return kExitOk;
}

int limit_cmd(const ExperimentConfig& c, std::ostream& csv, std::ostream& out)
{
    std::vector<Point> pts;
    for (const auto& v : c.points) {
        pts.push_back(to_point(v));
    }
    const auto rows = fundamental_limit_check(pts, c.p_list);
    auto header = coord_header(c.n);
    header.insert(header.begin(), "t");
    for (const char* s : {"p", "h_p", "w", "gap"}) {
        header.emplace_back(s);
    }
    CsvWriter w(csv, header);
    double worst = 0.0;
    for (const auto& r : rows) {
        std::vector<CsvCell> row{r.point.t};
        for (int d = 0; d < c.n; ++d) {
            row.emplace_back(r.point.x(d));
        }
        row.insert(row.end(), {r.p, r.h_p, r.w, r.gap});
        w.row(row);
        worst = std::max(worst, r.gap);
    }
    out << "# largest |H_p - W| " << format_double(worst) << "\n";
    return kExitOk;
}

}  // namespace

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err)
{
    std::unique_ptr<std::ofstream> file;
    if (!config.out.empty()) {
        file = std::make_unique<std::ofstream>(config.out, std::ios::binary);
        if (!*file) {
            err << "error: cannot open " << config.out << " for writing\n";
            return kExitFailure;
        }
    }
    std::ostream& csv = file ? static_cast<std::ostream&>(*file) : out;
    try {
        switch (config.command) {
        case Command::verify_solutions: return verify_solutions_cmd(config, csv, out);
        case Command::verify_barriers: return verify_barriers_cmd(config, csv, out);
        case Command::solve: return solve_cmd(config, csv, out);
        case Command::probe_regularity: return probe_cmd(config, csv, out);
        case Command::cylinder_top: return cylinder_top_cmd(config, csv, out);
        case Command::sweep_p: return sweep_cmd(config, csv, out);
        case Command::fundamental_limit: return limit_cmd(config, csv, out);
        }
    } catch (const CflError& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const InstabilityError& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace pparab::cli
