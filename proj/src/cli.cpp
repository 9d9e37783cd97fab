#include "qtheta/cli.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtheta/acceptance.hpp"
#include "qtheta/bounds.hpp"
#include "qtheta/config.hpp"
#include "qtheta/counting.hpp"
#include "qtheta/report.hpp"
#include "qtheta/theta.hpp"

namespace qtheta {

namespace {

// flags shared by the subcommands; unset optionals leave the config value alone
struct Overrides {
    std::string config_path;
    std::optional<std::int64_t> N, ell;
    std::optional<int> jobs;
    std::optional<std::string> out, format;
    std::optional<std::int64_t> n_max;

    RunConfig resolve() const
    {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (N) cfg.lattice.N = *N;
        if (ell) cfg.lattice.ell = *ell;
        if (jobs) cfg.run.jobs = *jobs;
        if (out) cfg.run.out_dir = *out;
        if (format) cfg.run.format = *format;
        if (n_max) cfg.grid.n_max = *n_max;
        cfg.validate();
        return cfg;
    }
};

void add_config(CLI::App* sub, Overrides& o)
{
    sub->add_option("--config", o.config_path, "INI configuration file")->check(CLI::ExistingFile);
}

void add_lattice(CLI::App* sub, Overrides& o)
{
    sub->add_option("--N", o.N, "level (squarefree)");
    sub->add_option("--ell", o.ell, "divisor of N for the dual lattice");
}

void add_run(CLI::App* sub, Overrides& o)
{
    sub->add_option("--jobs", o.jobs, "worker threads");
    sub->add_option("--out", o.out, "output directory (default $QTHETA_OUT_DIR, then cwd)");
    sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"csv", "json", "both"}));
}

EnumerationBudget budget_of(const RunConfig& cfg)
{
    return EnumerationBudget{cfg.run.max_candidates};
}

ThetaConfig theta_config(const RunConfig& cfg)
{
    ThetaConfig t;
    t.spec = cfg.lattice_spec();
    t.window = cfg.spectral_window();
    t.tol = cfg.theta.tol;
    t.abs_floor = cfg.precision.abs_floor;
    t.p_cut = cfg.theta.p_cut;
    t.phi_prec = cfg.phi_precision();
    t.budget = budget_of(cfg);
    return t;
}

void write_reports(const CountReport& r, const RunConfig& cfg, const std::string& stem)
{
    const auto dir = cfg.output_dir();
    std::filesystem::create_directories(dir);
    if (cfg.run.format != "json") {
        report_emit(r, ReportFormat::Csv, dir / (stem + ".csv"));
        std::printf("wrote %s\n", (dir / (stem + ".csv")).string().c_str());
    }
    if (cfg.run.format != "csv") {
        report_emit(r, ReportFormat::Json, dir / (stem + ".json"));
        std::printf("wrote %s\n", (dir / (stem + ".json")).string().c_str());
    }
}

void list_flagged(const CountReport& r)
{
    for (const auto& row : r.rows)
        if (row.flag)
            std::fprintf(stderr, "flagged: N=%lld ell=%lld delta=%g L=%g heart=%s g=%s count=%llu ratio=%s\n",
                         static_cast<long long>(row.N), static_cast<long long>(row.ell), row.delta, row.L,
                         row.heart ? format_float(*row.heart).c_str() : "-", row.g.c_str(),
                         static_cast<unsigned long long>(row.count), format_float(row.ratio).c_str());
}

int run_criteria(std::vector<int> ids, const AcceptanceOptions& opts)
{
    if (ids.empty())
        for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
    bool ok = true;
    for (int id : ids) {
        const CriterionResult r = run_criterion(id, opts);
        std::printf("%s\n", format_result(r).c_str());
        std::fflush(stdout);
        ok = ok && r.pass;
    }
    return ok ? kExitOk : kExitFailed;
}

// ---- subcommands

struct CountArgs {
    std::string kind = "omega";
    double delta = 1.0, L = 1.0;
    bool pairs = false, upper = false, list = false;
};

int do_count(const Overrides& o, const CountArgs& a)
{
    const RunConfig cfg = o.resolve();
    const LatticeSpec spec = cfg.lattice_spec();
    const auto deltas = cfg.grid.deltas.empty() ? std::vector<double>{a.delta} : cfg.grid.deltas;
    const auto Ls = cfg.grid.Ls.empty() ? std::vector<double>{a.L} : cfg.grid.Ls;
    const RegionSet set = a.kind == "omega" ? RegionSet::Omega : a.kind == "psi" ? RegionSet::Psi : RegionSet::Union;
    for (double delta : deltas)
        for (double L : Ls) {
            std::printf("N=%lld ell=%lld region=%s delta=%g L=%g", static_cast<long long>(spec.N),
                        static_cast<long long>(spec.ell), a.kind.c_str(), delta, L);
            if (set != RegionSet::Union) {
                const auto kind = set == RegionSet::Omega ? RegionKind::Omega : RegionKind::Psi;
                const auto members = enumerate_region(spec, Region(kind, delta, L), budget_of(cfg));
                std::printf(" elements=%zu", members.size());
                if (a.list)
                    for (const auto& m : members)
                        std::printf("\n  %s det_key=%lld", m.gamma.str().c_str(), static_cast<long long>(m.det_key));
            }
            if (a.pairs) {
                auto count = [&](const PairConstraint& c) {
                    return a.upper ? upper_triangular_pair_count(spec, set, delta, L, c, budget_of(cfg))
                                   : pair_count(spec, set, delta, L, c, budget_of(cfg));
                };
                std::printf(" pairs=%llu", static_cast<unsigned long long>(count({}).count));
                for (double h : cfg.grid.hearts)
                    std::printf(" pairs(heart=%g)=%llu", h, static_cast<unsigned long long>(count({h}).count));
            }
            std::printf("\n");
        }
    return kExitOk;
}

struct VerifyArgs {
    std::string prop = "omega";
    std::optional<double> constant;
};

int do_verify(const Overrides& o, const VerifyArgs& a)
{
    const RunConfig cfg = o.resolve();
    const Proposition p = proposition_from_string(a.prop);
    const bool heartish = p == Proposition::HeartConjecture || p == Proposition::UpperTriangular;
    BoundGrid grid = heartish ? default_heart_grid(cfg.grid.n_max) : default_prop_grid(cfg.grid.n_max);
    if (!cfg.grid.Ls.empty()) grid.Ls = cfg.grid.Ls;
    if (!cfg.grid.deltas.empty()) grid.deltas = cfg.grid.deltas;
    if (!cfg.grid.hearts.empty()) grid.heart_factors = cfg.grid.hearts;
    VerifyOptions vo;
    vo.constant = a.constant.value_or(0.0);
    vo.budget = budget_of(cfg);
    vo.jobs = cfg.run.jobs;
    const CountReport r = verify_bound(p, grid, vo);
    write_reports(r, cfg, "verify_" + to_string(p));
    std::printf("%s: %zu rows, max ratio %s, constant %s, flagged %zu\n", r.proposition.c_str(), r.rows.size(),
                format_float(r.max_ratio()).c_str(), format_float(r.constant).c_str(), r.flagged());
    list_flagged(r);
    // the Conjecture scan is report-only
    if (p == Proposition::HeartConjecture || r.flagged() == 0)
        return kExitOk;
    std::fprintf(stderr, "%zu rows exceed the constant\n", r.flagged());
    return kExitFailed;
}

struct MinimaArgs {
    std::string kind = "omega";
    double delta = 1.0;
    bool tracefree = false;
};

int do_minima(const Overrides& o, const MinimaArgs& a)
{
    const RunConfig cfg = o.resolve();
    MinimaOptions mo;
    mo.budget = budget_of(cfg);
    const auto lambda = successive_minima(cfg.lattice_spec(), a.kind == "omega" ? RegionKind::Omega : RegionKind::Psi,
                                          a.delta, a.tracefree ? Sublattice::TraceFree : Sublattice::Full, mo);
    std::printf("N=%lld ell=%lld region=%s delta=%g%s", static_cast<long long>(cfg.lattice.N),
                static_cast<long long>(cfg.lattice.ell), a.kind.c_str(), a.delta, a.tracefree ? " tracefree" : "");
    for (std::size_t i = 0; i < lambda.size(); ++i) std::printf(" lambda%zu=%s", i + 1, format_float(lambda[i]).c_str());
    std::printf("\n");
    return kExitOk;
}

struct PhiArgs {
    std::optional<std::string> suite;
    double P = 1.0, tau = 1.0;
    std::string route = "both";
};

int do_phi(const Overrides& o, const PhiArgs& a, const AcceptanceOptions& opts)
{
    static const std::map<std::string, int> suites = {
        {"closed-form", 1}, {"agreement", 2}, {"selberg", 3}, {"fourier", 4}, {"pde", 5}};
    if (a.suite)
        return run_criteria({suites.at(*a.suite)}, opts);
    const RunConfig cfg = o.resolve();
    const SpectralWindow w = cfg.spectral_window();
    const Precision prec = cfg.phi_precision();
    std::optional<double> abel, spectral;
    if (a.route != "spectral") {
        const PhiValue v = phi_abel(a.P, a.tau, w, prec);
        abel = v.value;
        std::printf("abel     %s  (error %s)\n", format_float(v.value).c_str(), format_float(v.error).c_str());
    }
    if (a.route != "abel") {
        const PhiValue v = phi_spectral(a.P, a.tau, w, prec);
        spectral = v.value;
        std::printf("spectral %s  (error %s)\n", format_float(v.value).c_str(), format_float(v.error).c_str());
    }
    if (abel && spectral) {
        const double rel = std::abs(*abel - *spectral) / std::max(std::abs(*abel), 1e-30);
        std::printf("relative difference %s\n", format_float(rel).c_str());
        if (rel > 1e-6) {
            std::fprintf(stderr, "routes disagree beyond 1e-6\n");
            return kExitFailed;
        }
    }
    return kExitOk;
}

struct ThetaArgs {
    std::optional<double> x, y;
};

int do_theta(const Overrides& o, const ThetaArgs& a)
{
    const RunConfig cfg = o.resolve();
    const HalfPlanePoint z(a.x.value_or(cfg.theta.x), a.y.value_or(cfg.theta.y));
    const ThetaValue v = theta_eval(theta_config(cfg), z);
    std::printf("theta(%g + %gi) = (%s, %s)\n", z.x, z.y, format_float(v.value.real()).c_str(),
                format_float(v.value.imag()).c_str());
    std::printf("det=0 part (%s, %s), p_cut %g, tail bound %s, doubling change %s, terms %zu\n",
                format_float(v.det_zero.real()).c_str(), format_float(v.det_zero.imag()).c_str(), v.p_cut,
                format_float(v.tail_bound).c_str(), format_float(v.doubling_change).c_str(), v.terms);
    return kExitOk;
}

int do_l2(const Overrides& o, std::vector<double> ys)
{
    const RunConfig cfg = o.resolve();
    if (ys.empty())
        ys.push_back(cfg.theta.y);
    const ThetaConfig t = theta_config(cfg);
    for (double y : ys) {
        if (!(y > 0.0))
            throw ConfigError("l2: y must be positive");
        const L2Value v = l2_integrand(t, y);
        std::printf("y=%g l2=%s error_bound=%s det0=%s classes=%zu terms=%zu p_cut=%g\n", y,
                    format_float(v.value).c_str(), format_float(v.error_bound).c_str(),
                    format_float(v.det_zero).c_str(), v.classes, v.terms, v.p_cut);
    }
    return kExitOk;
}

struct BoundArgs {
    double T = 3.0;
    double g2_x = 0.0, g2_y = 1.0, g2_theta = 0.0;
};

int do_bound(const Overrides& o, const BoundArgs& a)
{
    const RunConfig cfg = o.resolve();
    if (!(a.g2_y > 0.0))
        throw ConfigError("bound: --g2-y must be positive");
    FourthMomentOptions fo;
    fo.budget = budget_of(cfg);
    const CountReport r = geometric_fourth_moment_bound(cfg.lattice_spec().g,
                                                        GroupElement::iwasawa(a.g2_x, a.g2_y, a.g2_theta),
                                                        cfg.lattice.N, a.T, fo);
    write_reports(r, cfg, "fourth_moment");
    std::printf("fourth-moment: %zu rows, max count/(ell L^2 heart) %s\n", r.rows.size(),
                format_float(r.max_ratio()).c_str());
    return kExitOk;
}

struct SelftestArgs {
    bool fast = false;
    std::vector<int> ids;
};

int do_selftest(const Overrides& o, const SelftestArgs& a)
{
    const RunConfig cfg = o.resolve();
    for (int id : a.ids)
        if (id < 1 || id > kCriterionCount)
            throw ConfigError("selftest: criteria are numbered 1.." + std::to_string(kCriterionCount));
    AcceptanceOptions opts;
    opts.fast = a.fast;
    opts.jobs = cfg.run.jobs;
    if (o.out || !cfg.run.out_dir.empty())
        opts.out_dir = cfg.output_dir();
    return run_criteria(a.ids, opts);
}

int do_fit(const Overrides& o, const std::string& write_path)
{
    const RunConfig cfg = o.resolve();
    const std::string header = frozen_constants_header(fit_constants(cfg.run.jobs));
    if (write_path.empty()) {
        std::fputs(header.c_str(), stdout);
        return kExitOk;
    }
    std::ofstream out(write_path, std::ios::binary);
    out << header;
    if (!out)
        throw std::runtime_error("cannot write '" + write_path + "'");
    std::printf("wrote %s\n", write_path.c_str());
    return kExitOk;
}

}  // namespace

int cli_dispatch(int argc, char** argv)
{
    CLI::App app{"qtheta: lattice counts, test functions and theta lifts for Eichler orders"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "help for every subcommand");

    Overrides ov;
    std::function<int()> action;

    auto* count = app.add_subcommand("count", "enumerate region members and count pairs");
    CountArgs count_args;
    add_config(count, ov);
    add_lattice(count, ov);
    count->add_option("--kind", count_args.kind, "region")->check(CLI::IsMember({"omega", "psi", "union"}));
    count->add_option("--delta", count_args.delta, "part bound (used when the config has no grid.deltas)")
        ->check(CLI::PositiveNumber);
    count->add_option("--L", count_args.L, "scale (used when the config has no grid.Ls)")->check(CLI::PositiveNumber);
    count->add_flag("--pairs", count_args.pairs, "count equal-determinant pairs (and grid.hearts constraints)");
    count->add_flag("--upper", count_args.upper, "only pairs of upper-triangular members");
    count->add_flag("--list", count_args.list, "print every member");
    count->callback([&] { action = [&] { return do_count(ov, count_args); }; });

    auto* verify = app.add_subcommand("verify-bound", "sweep count/RHS ratios of a counting bound");
    VerifyArgs verify_args;
    add_config(verify, ov);
    add_run(verify, ov);
    verify->add_option("--prop", verify_args.prop, "proposition")
        ->check(CLI::IsMember({"omega", "psi", "tracefree", "heart", "upper"}));
    verify->add_option("--N-max", ov.n_max, "largest level of the sweep")->check(CLI::Range(1, 1000));
    verify->add_option("--constant", verify_args.constant, "flag threshold (default: frozen constant)")
        ->check(CLI::PositiveNumber);
    verify->callback([&] { action = [&] { return do_verify(ov, verify_args); }; });

    auto* minima = app.add_subcommand("minima", "successive minima of the unit body");
    MinimaArgs minima_args;
    add_config(minima, ov);
    add_lattice(minima, ov);
    minima->add_option("--kind", minima_args.kind, "region")->check(CLI::IsMember({"omega", "psi"}));
    minima->add_option("--delta", minima_args.delta, "part bound")->check(CLI::PositiveNumber);
    minima->add_flag("--tracefree", minima_args.tracefree, "restrict to the trace-free sublattice");
    minima->callback([&] { action = [&] { return do_minima(ov, minima_args); }; });

    AcceptanceOptions suite_opts;
    auto* phi = app.add_subcommand("phi", "evaluate the test function or run one of its suites");
    PhiArgs phi_args;
    add_config(phi, ov);
    phi->add_option("--suite", phi_args.suite, "check suite")
        ->check(CLI::IsMember({"agreement", "pde", "closed-form", "selberg", "fourier"}));
    phi->add_option("--P", phi_args.P, "P = |m|^2 / 2")->check(CLI::PositiveNumber);
    phi->add_option("--tau", phi_args.tau, "determinant");
    phi->add_option("--route", phi_args.route, "evaluation route")->check(CLI::IsMember({"abel", "spectral", "both"}));
    phi->callback([&] { action = [&] { return do_phi(ov, phi_args, suite_opts); }; });

    auto* theta = app.add_subcommand("theta", "certified theta value at a point");
    ThetaArgs theta_args;
    add_config(theta, ov);
    add_lattice(theta, ov);
    theta->add_option("--x", theta_args.x, "real part");
    theta->add_option("--y", theta_args.y, "imaginary part")->check(CLI::PositiveNumber);
    theta->callback([&] { action = [&] { return do_theta(ov, theta_args); }; });

    auto* l2 = app.add_subcommand("l2", "y-integrand of the L2 norm (det != 0 classes)");
    std::vector<double> l2_ys;
    add_config(l2, ov);
    add_lattice(l2, ov);
    l2->add_option("--y", l2_ys, "heights (repeatable)");
    l2->callback([&] { action = [&] { return do_l2(ov, l2_ys); }; });

    auto* bound = app.add_subcommand("bound", "geometric fourth-moment count over the dyadic ranges");
    BoundArgs bound_args;
    add_config(bound, ov);
    add_lattice(bound, ov);
    add_run(bound, ov);
    bound->add_option("--T", bound_args.T, "spectral parameter (>= 3)");
    bound->add_option("--g2-x", bound_args.g2_x, "second point: x");
    bound->add_option("--g2-y", bound_args.g2_y, "second point: y");
    bound->add_option("--g2-theta", bound_args.g2_theta, "second point: rotation angle");
    bound->callback([&] { action = [&] { return do_bound(ov, bound_args); }; });

    auto* selftest = app.add_subcommand("selftest", "acceptance suite, one line per criterion");
    SelftestArgs selftest_args;
    add_config(selftest, ov);
    add_run(selftest, ov);
    selftest->add_flag("--fast", selftest_args.fast, "smaller level range for the sweeps");
    selftest->add_option("--criterion", selftest_args.ids, "run only these criteria (1-12)");
    selftest->callback([&] { action = [&] { return do_selftest(ov, selftest_args); }; });

    auto* fit = app.add_subcommand("fit", "rerun the fitting sweeps and print the frozen-constants header");
    std::string fit_path;
    add_config(fit, ov);
    fit->add_option("--jobs", ov.jobs, "worker threads");
    fit->add_option("--write", fit_path, "write the header here instead of stdout");
    fit->callback([&] { action = [&] { return do_fit(ov, fit_path); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        return action ? action() : kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return kExitFailed;
    }
}

}  // namespace qtheta
