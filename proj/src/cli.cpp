#include "plurilab/cli.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "plurilab/basis.hpp"
#include "plurilab/cheb.hpp"
#include "plurilab/diag.hpp"
#include "plurilab/domains.hpp"
#include "plurilab/energy.hpp"
#include "plurilab/fekete.hpp"
#include "plurilab/gram.hpp"
#include "plurilab/optmeas.hpp"
#include "plurilab/vdm.hpp"
#include "plurilab/version.hpp"

namespace plurilab::cli {

namespace {

// Everything a subcommand needs, built and validated before any computation.
struct Setup {
    CandidateSetPtr set;
    AdmissibleWeight weight = AdmissibleWeight::zero();
    std::vector<double> q;
    json description;
};

struct Degrees {
    int lo = 1;
    int hi = 1;
};

// Setup-phase failures are configuration errors even when they surface from the library.
template <class F>
auto configure(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

Geometry parse_geometry(const std::string& s) {
    for (auto g : {Geometry::interval, Geometry::circle, Geometry::disk, Geometry::torus, Geometry::polydisk})
        if (to_string(g) == s) return g;
    throw ConfigError("unsupported geometry '" + s + "'");
}

GeometrySpec geometry_spec(const Config& c) {
    GeometrySpec g;
    g.kind = parse_geometry(c.get_string("geometry"));
    g.dimension = static_cast<int>(c.get_int("dimension", 1));
    g.radius = c.get_double("radius", 1.0);
    if (c.has("radii"))
        for (double r : c.get_doubles("radii")) g.radii.push_back(r);
    g.a = c.get_double("a", -1.0);
    g.b = c.get_double("b", 1.0);
    const auto rule = c.get_string("rule", "equispaced");
    if (rule == "equispaced") g.rule = IntervalRule::equispaced;
    else if (rule == "chebyshev") g.rule = IntervalRule::chebyshev;
    else throw ConfigError("unknown interval rule '" + rule + "'");
    g.resolution = static_cast<int>(c.get_int("resolution", 0));
    g.radial_resolution = static_cast<int>(c.get_int("radial_resolution", 0));
    g.angular_resolution = static_cast<int>(c.get_int("angular_resolution", 0));
    if (g.kind == Geometry::polydisk) g.dimension = static_cast<int>(g.radii.size());
    return g;
}

AdmissibleWeight weight_spec(const Config& c) {
    const auto kind = c.get_string("weight", "zero");
    if (kind == "zero") return AdmissibleWeight::zero();
    if (kind == "quadratic") return AdmissibleWeight::quadratic(c.get_double("weight_scale", 1.0));
    if (kind == "radial_table") {
        const auto v = c.get_doubles("weight_knots");
        if (v.size() < 2 || v.size() % 2) throw ConfigError("weight_knots needs radius,value pairs");
        std::vector<std::pair<double, double>> knots;
        for (std::size_t i = 0; i < v.size(); i += 2) knots.emplace_back(v[i], v[i + 1]);
        return AdmissibleWeight::radial_table(std::move(knots));
    }
    throw ConfigError("unknown weight '" + kind + "'");
}

Setup make_setup(const Config& c) {
    return configure([&] {
        Setup s;
        if (c.has("points_csv")) {
            const auto path = c.get_string("points_csv");
            std::ifstream f(path);
            if (!f) throw ConfigError("cannot open points_csv '" + path + "'");
            s.set = std::make_shared<const CandidateSet>(read_csv(f));
            s.description = {{"geometry", "custom"}, {"points_csv", path}};
        } else {
            const auto g = geometry_spec(c);
            s.set = std::make_shared<const CandidateSet>(build_set(g));
            s.description = {{"geometry", to_string(g.kind)}, {"dimension", s.set->dimension()}};
        }
        s.weight = weight_spec(c);
        s.q = eval_weight(s.weight, *s.set);
        s.description["points"] = s.set->size();
        s.description["weight"] = c.get_string("weight", "zero");
        return s;
    });
}

Degrees degree_range(const Config& c, int d) {
    Degrees r;
    if (c.has("n")) {
        r.lo = r.hi = static_cast<int>(c.get_int("n"));
    } else {
        r.hi = static_cast<int>(c.get_int("n_max"));
        r.lo = static_cast<int>(c.get_int("n_min", 1));
    }
    if (r.lo < 1 || r.hi < r.lo) throw ConfigError("degree range must satisfy 1 <= n_min <= n_max");
    configure([&] {
        check_degree_cap(r.hi, d);
        return 0;
    });
    return r;
}

ExtremalModel model_spec(const Config& c, int d) {
    const auto kind = c.get_string("model");
    return configure([&] {
        if (kind == "disk") return ExtremalModel::disk(c.get_double("model_radius", 1.0));
        if (kind == "weighted_disk") return ExtremalModel::weighted_disk();
        if (kind == "torus") return ExtremalModel::torus(d);
        if (kind == "polydisk") {
            const auto r = c.get_doubles("model_radii");
            return ExtremalModel::polydisk({r.begin(), r.end()});
        }
        throw ConfigError("unknown model '" + kind + "'");
    });
}

void write_file(const std::string& path, const std::string& what, const std::function<void(std::ostream&)>& fn) {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + what + " to '" + path + "'");
    fn(f);
}

void write_measure_csv(const std::string& path, const DiscreteMeasure& mu) {
    const auto& S = mu.set();
    CandidateSet with_mass(S.dimension(), S.coords(), std::vector<double>(mu.masses().begin(), mu.masses().end()),
                           S.geometry());
    write_file(path, "measure CSV", [&](std::ostream& os) { write_csv(os, with_mass); });
}

json ints(const MultiIndex& a) { return json(std::vector<int>(a.begin(), a.end())); }

// Deterministic uniform [-1, 1] from mt19937_64; std distributions differ between libraries.
std::vector<double> random_field(std::uint64_t seed, std::size_t m) {
    std::mt19937_64 gen(seed);
    std::vector<double> u(m);
    for (auto& x : u) x = 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0;
    return u;
}

// ---------------------------------------------------------------- fekete

json run_fekete(const Config& c, const RunOptions&) {
    const auto s = make_setup(c);
    const auto deg = degree_range(c, s.set->dimension());
    const int sweeps = static_cast<int>(c.get_int("max_sweeps", 50));
    const auto csv = c.get_string("csv", "");
    c.require_all_used();

    const auto seq = diameter_sequence(*s.set, s.q, deg.hi, deg.lo, sweeps);
    json rows = json::array();
    for (std::size_t i = 0; i < seq.degrees.size(); ++i) {
        const auto& cfg = seq.configs[i];
        // Bergman function of the empirical measure at its own points equals N.
        const auto mu = empirical_measure(cfg, s.set);
        const auto sys = gram_matrix(mu, s.q, cfg.degree);
        const auto B = bergman_function(sys, *s.set, s.q);
        double dev = 0.0;
        for (auto k : cfg.indices) dev = std::max(dev, std::abs(B[k] - static_cast<double>(cfg.size())));
        rows.push_back({{"n", cfg.degree},
                        {"N", cfg.size()},
                        {"log_vdm", cfg.log_weighted_vdm},
                        {"delta_n", seq.delta[i]},
                        {"method", to_string(cfg.method)},
                        {"swaps", cfg.swaps},
                        {"bergman_at_points_max_dev", dev / static_cast<double>(cfg.size())}});
    }
    if (!csv.empty())
        write_file(csv, "configuration CSV", [&](std::ostream& os) { write_configuration_csv(os, seq.configs.back(), *s.set); });
    return {{"set", s.description},
            {"degrees", rows},
            {"monotone_decreasing", seq.monotone_decreasing},
            {"extrapolation",
             {{"limit", seq.limit()},
              {"log_limit", seq.extrapolation.log_limit},
              {"terms", seq.extrapolation.terms},
              {"points_used", seq.extrapolation.points_used}}}};
}

// ---------------------------------------------------------------- optmeas

OptimalMeasureOptions solver_options(const Config& c) {
    OptimalMeasureOptions o;
    o.tol = c.get_double("tol", 1e-6);
    o.algo = configure([&] { return parse_opt_algo(c.get_string("algo", "multiplicative")); });
    o.max_iter = static_cast<std::size_t>(c.get_int("max_iter", 0));
    if (!(o.tol > 0)) throw ConfigError("tol must be positive");
    return o;
}

json run_optmeas(const Config& c, const RunOptions&) {
    const auto s = make_setup(c);
    const auto deg = degree_range(c, s.set->dimension());
    const auto opt = solver_options(c);
    const auto csv = c.get_string("csv", "");
    c.require_all_used();

    json rows = json::array();
    std::optional<DiscreteMeasure> last;
    for (int n = deg.lo; n <= deg.hi; ++n) {
        const auto rep = solve_optimal_measure(s.set, s.q, n, opt);
        const auto cert = support_certificate(rep.measure, s.q, n, opt.tol, opt.mass_floor);
        const double d = s.set->dimension();
        const double N = static_cast<double>(rep.dimension_n);
        double fekete_nld = std::nan("");
        try {
            const auto f = fekete(*s.set, n, s.q);
            const auto sys = gram_matrix(empirical_measure(f, s.set), s.q, n);
            fekete_nld = normalized_log_det(sys);
        } catch (const Error&) {
        }
        rows.push_back({{"n", n},
                        {"N", rep.dimension_n},
                        {"algo", to_string(opt.algo)},
                        {"iterations", rep.iterations},
                        {"converged", rep.converged},
                        {"kw_gap", rep.kw_gap},
                        {"kw_gap_rel", rep.kw_gap / N},
                        {"log_det", rep.log_det},
                        {"normalized_log_det", (d + 1.0) / (2.0 * d * n * N) * rep.log_det},
                        {"fekete_normalized_log_det", fekete_nld},
                        {"det_monotone", rep.det_monotone},
                        {"support_size", cert.support.size()},
                        {"support_violations", cert.violations.size()},
                        {"masses_histogram", mass_histogram(rep.measure.masses())}});
        last = rep.measure;
    }
    if (!csv.empty() && last) write_measure_csv(csv, *last);
    return {{"set", s.description}, {"tol", opt.tol}, {"degrees", rows}};
}

// ---------------------------------------------------------------- cheb

struct ChebTable {
    std::vector<ChebyshevRecord> records;  // by degree, then lex
    std::vector<double> tau0;              // per degree
    std::vector<double> diameter;          // per degree
};

ChebTable chebyshev_table(const Setup& s, ChebClass cls, int n_max, const ChebyshevOptions& opt) {
    ChebTable t;
    for (int n = 1; n <= n_max; ++n) {
        auto recs = degree_records(*s.set, n, cls, s.q, opt);
        t.tau0.push_back(tau_geometric_mean(recs));
        t.records.insert(t.records.end(), recs.begin(), recs.end());
        t.diameter.push_back(chebyshev_diameter(t.records, n, s.set->dimension()));
    }
    return t;
}

ChebyshevOptions cheb_options(const Config& c) {
    ChebyshevOptions o;
    o.facets = static_cast<int>(c.get_int("facets", 16));
    o.max_rounds = static_cast<int>(c.get_int("max_rounds", 200));
    if (o.facets < 3) throw ConfigError("facets must be >= 3");
    return o;
}

ChebClass cheb_class(const Config& c, const Setup& s) {
    const auto def = s.weight.is_zero() ? "plain" : "weighted";
    return configure([&] { return parse_cheb_class(c.get_string("class", def)); });
}

json run_cheb(const Config& c, const RunOptions&) {
    const auto s = make_setup(c);
    const auto deg = degree_range(c, s.set->dimension());
    const auto cls = cheb_class(c, s);
    const auto opt = cheb_options(c);
    const auto csv = c.get_string("csv", "");
    c.require_all_used();

    const auto t = chebyshev_table(s, cls, deg.hi, opt);
    json recs = json::array();
    for (const auto& r : t.records)
        recs.push_back({{"alpha", ints(r.alpha)},
                        {"Y", r.value},
                        {"tau", r.tau},
                        {"lower_bound", r.lower_bound},
                        {"gap", r.gap()},
                        {"rounds", r.rounds},
                        {"cuts", r.cuts},
                        {"real_coefficients", r.real_coefficients}});
    json per = json::array();
    for (int n = deg.lo; n <= deg.hi; ++n)
        per.push_back({{"n", n}, {"tau_geometric_mean", t.tau0[static_cast<std::size_t>(n - 1)]},
                       {"chebyshev_diameter", t.diameter[static_cast<std::size_t>(n - 1)]}});
    json viol = json::array();
    for (const auto& v : submultiplicativity_audit(t.records))
        viol.push_back({{"alpha", ints(v.alpha)}, {"beta", ints(v.beta)}, {"lhs", v.lhs}, {"rhs", v.rhs}});
    if (!csv.empty()) write_file(csv, "records CSV", [&](std::ostream& os) { write_records_csv(os, t.records); });
    return {{"set", s.description},
            {"class", to_string(cls)},
            {"facets", opt.facets},
            {"facet_error_bound", facet_error_bound(opt.facets)},
            {"records", recs},
            {"degrees", per},
            {"submultiplicativity_violations", viol}};
}

// ---------------------------------------------------------------- tfd

json run_tfd(const Config& c, const RunOptions&) {
    const auto s = make_setup(c);
    const auto deg = degree_range(c, s.set->dimension());
    const int sweeps = static_cast<int>(c.get_int("max_sweeps", 50));
    const auto opt = solver_options(c);
    const auto cls = cheb_class(c, s);
    const auto copt = cheb_options(c);
    const int m_t = static_cast<int>(c.get_int("m_t", 1));
    if (m_t < 1) throw ConfigError("m_t must be >= 1");
    c.require_all_used();

    const int d = s.set->dimension();
    const auto seq = diameter_sequence(*s.set, s.q, deg.hi, deg.lo, sweeps);
    const auto cheb = chebyshev_table(s, cls, deg.hi, copt);
    const auto lift = homogeneous_lift(*s.set, s.q, m_t);

    std::vector<double> lf, lg, lc, ll;
    json rows = json::array();
    for (int n = deg.lo; n <= deg.hi; ++n) {
        const auto i = static_cast<std::size_t>(n - deg.lo);
        const auto rep = solve_optimal_measure(s.set, s.q, n, opt);
        const double N = static_cast<double>(rep.dimension_n);
        const double gram = (d + 1.0) / (2.0 * d * n * N) * rep.log_det;
        const auto H = homogeneous_vandermonde(lift.set, n);
        const double lift_log = diameter_exponent(d, n) *
                                log_abs_det_columns(H, exchange_select(H, greedy_select(H), sweeps).indices);
        lf.push_back(std::log(seq.delta[i]));
        lg.push_back(gram);
        lc.push_back(std::log(cheb.diameter[static_cast<std::size_t>(n - 1)]));
        ll.push_back(lift_log);
        rows.push_back({{"n", n},
                        {"fekete", seq.delta[i]},
                        {"gram", std::exp(gram)},
                        {"gram_converged", rep.converged},
                        {"chebyshev", cheb.diameter[static_cast<std::size_t>(n - 1)]},
                        {"lift", std::exp(lift_log)}});
    }
    auto lim = [&](const std::vector<double>& v) { return std::exp(extrapolate_log_diameter(seq.degrees, v).log_limit); };
    return {{"set", s.description},
            {"chebyshev_class", to_string(cls)},
            {"degrees", rows},
            {"limits", {{"fekete", lim(lf)}, {"gram", lim(lg)}, {"chebyshev", lim(lc)}, {"lift", lim(ll)}}}};
}

// ---------------------------------------------------------------- bergman

std::string measure_kind(const Config& c, const Setup& s) {
    return c.get_string("measure", s.set->has_masses() ? "reference" : "uniform");
}

DiscreteMeasure base_measure(const std::string& kind, const Setup& s) {
    if (kind == "reference") {
        if (!s.set->has_masses()) throw ConfigError("measure = reference needs a set with quadrature masses");
        return DiscreteMeasure::reference(s.set);
    }
    if (kind == "uniform") return DiscreteMeasure::uniform(s.set);
    throw ConfigError("unknown measure '" + kind + "'");
}

json run_bergman(const Config& c, const RunOptions&) {
    const auto s = make_setup(c);
    const auto deg = degree_range(c, s.set->dimension());
    const auto mu = configure([&] { return base_measure(measure_kind(c, s), s); });
    const auto csv = c.get_string("csv", "");
    c.require_all_used();

    json rows = json::array();
    std::vector<double> lastB;
    for (int n = deg.lo; n <= deg.hi; ++n) {
        const auto sys = gram_matrix(mu, s.q, n);
        auto B = bergman_function(sys, *s.set, s.q);
        double trace = 0.0;
        for (std::size_t k = 0; k < B.size(); ++k) trace += mu.mass(k) * B[k];
        const auto bm = bm_constant(sys, *s.set, s.q);
        const double N = static_cast<double>(sys.size());
        rows.push_back({{"n", n},
                        {"N", sys.size()},
                        {"trace", trace},
                        {"trace_error", trace - N},
                        {"max_B", bm.constant * bm.constant},
                        {"argmax", bm.argmax},
                        {"M_n", bm.constant},
                        {"M_n_root", std::pow(bm.constant, 1.0 / n)},
                        {"kw_gap", bm.constant * bm.constant - N},
                        {"normalized_log_det", normalized_log_det(sys)},
                        {"log_free_energy", std::lgamma(N + 1.0) + sys.log_det}});
        lastB = std::move(B);
    }
    if (!csv.empty())
        write_file(csv, "Bergman CSV", [&](std::ostream& os) {
            const auto old = os.precision(17);
            os << "index,B\n";
            for (std::size_t k = 0; k < lastB.size(); ++k) os << k << ',' << lastB[k] << '\n';
            os.precision(old);
        });
    return {{"set", s.description}, {"degrees", rows}};
}

// ---------------------------------------------------------------- energy-check

json run_energy(const Config& c, const RunOptions&) {
    const auto s = make_setup(c);
    const int d = s.set->dimension();
    const auto model = model_spec(c, d);
    const auto deg = degree_range(c, d);
    const int quad = static_cast<int>(c.get_int("quad_resolution", 256));
    const int sweeps = static_cast<int>(c.get_int("max_sweeps", 50));
    c.require_all_used();
    if (model.dimension() != d) throw ConfigError("model dimension differs from the candidate set");
    if (!s.weight.is_zero() && model.kind() != ExtremalModel::Kind::weighted_disk)
        throw ConfigError("weight does not match the model");
    if (model.kind() == ExtremalModel::Kind::weighted_disk &&
        !(s.weight.kind() == AdmissibleWeight::Kind::quadratic && s.weight.scale() == 1.0))
        throw ConfigError("weighted_disk model needs weight = quadratic with scale 1");

    const auto r = rumely_check(model, *s.set, deg.hi, quad, sweeps);
    json seq = json::array();
    for (std::size_t i = 0; i < r.sequence.degrees.size(); ++i)
        seq.push_back({{"n", r.sequence.degrees[i]}, {"delta_n", r.sequence.delta[i]}});
    json out = {{"set", s.description},
                {"mass_convention", "(2pi)^d"},
                {"rumely",
                 {{"lhs", r.lhs},
                  {"rhs", r.rhs},
                  {"gap", r.gap},
                  {"n_max", r.n_max},
                  {"model", r.model},
                  {"delta_exact", r.delta_exact},
                  {"delta_limit", r.delta_limit},
                  {"delta_at_n_max", r.delta_at_n_max},
                  {"rel_gap_at_n_max", r.rel_gap_at_n_max},
                  {"monotone", r.monotone},
                  {"sequence", seq}}}};
    if (d == 1) {
        const auto w = dw_vs_deltaw_check(model, r.delta_limit, quad);
        out["robin_constant"] = robin_constant(model);
        out["dw"] = {{"model", w.model},
                     {"mass_convention", "1"},
                     {"q_integral", w.q_integral},
                     {"dw", w.dw},
                     {"product", w.product},
                     {"delta_closed", w.delta_closed},
                     {"closed_form_gap", w.closed_form_gap},
                     {"delta_estimate", w.delta_estimate},
                     {"estimate_rel_gap", w.estimate_rel_gap},
                     {"n_max", r.n_max}};
    }
    return out;
}

// ---------------------------------------------------------------- diag

std::vector<double> perturbation(const Config& c, const Setup& s, const RunOptions& o, std::string& label) {
    label = c.get_string("perturbation", "random");
    const std::size_t M = s.set->size();
    std::vector<double> u(M);
    if (label == "random") return random_field(o.seed, M);
    if (label == "constant") {
        const double v = c.get_double("perturbation_constant", 1.0);
        std::fill(u.begin(), u.end(), v);
        return u;
    }
    for (std::size_t k = 0; k < M; ++k) {
        const auto z = s.set->point(k);
        if (label == "re") u[k] = z[0].real();
        else if (label == "abs2") u[k] = std::norm(z[0]);
        else throw ConfigError("unknown perturbation '" + label + "'");
    }
    return u;
}

DiscreteMeasure diag_measure(const std::string& kind, const std::string& base, const Setup& s, int n) {
    if (kind == "fekete") return empirical_measure(fekete(*s.set, n, s.q), s.set);
    if (kind == "optimal") return solve_optimal_measure(s.set, s.q, n).measure;
    if (kind == "bergman") return bergman_measure(base_measure(base, s), s.q, n).measure;
    return base_measure(base, s);
}

json run_diag(const Config& c, const RunOptions& o) {
    const auto s = make_setup(c);
    const int d = s.set->dimension();
    const int n = static_cast<int>(c.get_int("n", 0));
    std::string label;
    const auto u = perturbation(c, s, o, label);
    const auto path_measure = c.get_string("measure_path", "base");
    const auto t = configure([&] {
        return default_t_grid(static_cast<int>(c.get_int("t_points", 11)), c.get_double("t_min", -0.5),
                              c.get_double("t_max", 0.5));
    });
    const double h = c.get_double("fd_step", 1e-4);
    std::vector<long long> weak_degrees;
    if (c.has("weak_degrees")) weak_degrees = c.get_ints("weak_degrees");
    const auto weak_kind = c.get_string("weak_measure", "bergman");
    const int max_moment = static_cast<int>(c.get_int("max_moment", 5));
    std::optional<ExtremalModel> model;
    if (c.has("model")) model = model_spec(c, d);
    const auto base = measure_kind(c, s);
    configure([&] { return base_measure(base, s); });
    if (path_measure != "base" && path_measure != "fekete" && path_measure != "optimal")
        throw ConfigError("measure_path must be base, fekete or optimal");
    if (weak_kind != "bergman" && weak_kind != "fekete" && weak_kind != "optimal")
        throw ConfigError("weak_measure must be bergman, fekete or optimal");
    if (n > 0) configure([&] {
        check_degree_cap(n, d);
        return 0;
    });
    for (auto k : weak_degrees) {
        if (k < 1) throw ConfigError("weak_degrees must be positive");
        configure([&] {
            check_degree_cap(static_cast<int>(k), d);
            return 0;
        });
    }
    if (!weak_degrees.empty() && !model) throw ConfigError("weak_degrees needs a model");
    c.require_all_used();

    json out = {{"set", s.description}};
    if (n > 0) {
        const auto mu = diag_measure(path_measure, base, s, n);
        const auto p = f_n_path(mu, s.q, u, n, t, h, label);
        out["path"] = {{"n", n},
                       {"measure", path_measure},
                       {"perturbation", p.perturbation},
                       {"h", p.h},
                       {"t", p.t},
                       {"f", p.f},
                       {"analytic", p.analytic},
                       {"finite_diff", p.finite_diff},
                       {"second_diff", p.second_diff},
                       {"max_rel_derivative_error", p.max_rel_derivative_error()},
                       {"max_second_difference", concavity_check(p)}};
    }
    if (!weak_degrees.empty()) {
        json rows = json::array();
        std::vector<double> radial;
        for (auto k : weak_degrees) {
            const auto mu = diag_measure(weak_kind, base, s, static_cast<int>(k));
            const auto w = weak_star_distance(mu, *model, max_moment);
            json row = {{"n", k}, {"moment", w.moment}};
            if (w.has_radial) {
                row["radial_cdf"] = w.radial_cdf;
                radial.push_back(w.radial_cdf);
            }
            rows.push_back(row);
        }
        bool dec = !radial.empty();
        for (std::size_t i = 1; i < radial.size(); ++i) dec = dec && radial[i] < radial[i - 1];
        out["weak_star"] = {{"measure", weak_kind},
                            {"model", model->name()},
                            {"max_moment", max_moment},
                            {"rows", rows},
                            {"radial_strictly_decreasing", dec}};
    }
    return out;
}

using Handler = json (*)(const Config&, const RunOptions&);

const std::vector<std::pair<std::string, Handler>>& table() {
    static const std::vector<std::pair<std::string, Handler>> t = {
        {"fekete", run_fekete}, {"optmeas", run_optmeas},      {"cheb", run_cheb}, {"tfd", run_tfd},
        {"bergman", run_bergman}, {"energy-check", run_energy}, {"diag", run_diag}};
    return t;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json envelope(const std::string& sub, const Config& c, const RunOptions& o) {
    const std::string canon = c.canonical() + "seed=" + std::to_string(o.seed) + "\n" +
                              "override_degree_cap=" + (o.override_degree_cap ? "true" : "false") + "\n";
    json cfg = json::object();
    for (const auto& [k, v] : c.values()) cfg[k] = v;
    return {{"schema", "plurilab/" + sub + "/1"},
            {"version", version},
            {"subcommand", sub},
            {"config_hash", hash_hex(fnv1a(canon))},
            {"seed", o.seed},
            {"config", cfg}};
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : table()) v.push_back(name);
        return v;
    }();
    return names;
}

RunResult run(const std::string& sub, const Config& config, const RunOptions& opt) {
    RunResult r;
    r.report = envelope(sub, config, opt);
    set_degree_cap_override(opt.override_degree_cap);
    auto fail = [&](int code, const std::string& kind, const std::string& msg) {
        r.exit_code = code;
        r.report["schema"] = "plurilab/error/1";
        r.report["error"] = {{"kind", kind}, {"message", msg}};
    };
    Handler h = nullptr;
    for (const auto& [name, fn] : table())
        if (name == sub) h = fn;
    if (!h) {
        fail(config_error, "config", "unknown subcommand '" + sub + "'");
        return r;
    }
    try {
        r.report["result"] = h(config, opt);
    } catch (const ConfigError& e) {
        fail(config_error, "config", e.what());
    } catch (const DegenerateError& e) {
        fail(computation_error, "degenerate", e.what());
        r.report["error"]["numerical_rank"] = e.numerical_rank();
        r.report["error"]["dimension"] = e.dimension();
    } catch (const std::exception& e) {
        fail(computation_error, "computation", e.what());
    }
    return r;
}

std::string dump(const json& report) { return report.dump(2) + "\n"; }

int main(int argc, char** argv) {
    CLI::App app{"plurilab: weighted pluripotential theory laboratory"};
    std::string sub, config_path, out_path;
    int threads = 0;
    bool override_cap = false;
    std::uint64_t seed = 0;
    std::string names;
    for (const auto& s : subcommands()) names += (names.empty() ? "" : ", ") + s;
    app.add_option("subcommand", sub, "one of: " + names)->required();
    app.add_option("--config", config_path, "key = value experiment file")->required();
    app.add_option("--out", out_path, "write the JSON report here instead of stdout");
    app.add_option("--threads", threads, "cap on OpenMP worker threads");
    app.add_flag("--override-degree-cap", override_cap, "allow degrees above the binary64 caps");
    app.add_option("--seed", seed, "seed for randomized perturbations");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : config_error;
    }
    if (threads > 0) omp_set_num_threads(threads);

    RunResult r;
    try {
        r = run(sub, Config::parse_file(config_path), {seed, override_cap});
    } catch (const ConfigError& e) {
        r.exit_code = config_error;
        r.report = {{"schema", "plurilab/error/1"},
                    {"version", version},
                    {"subcommand", sub},
                    {"error", {{"kind", "config"}, {"message", e.what()}}}};
    }
    const auto text = dump(r.report);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "cannot write '" << out_path << "'\n";
            return computation_error;
        }
        f << text;
    }
    if (r.exit_code != ok) std::cerr << "plurilab: " << r.report["error"]["message"].get<std::string>() << "\n";
    return r.exit_code;
}

}  // namespace plurilab::cli
