#include "qtheta/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "qtheta/bounds.hpp"
#include "qtheta/counting.hpp"
#include "qtheta/frozen_constants.hpp"
#include "qtheta/report.hpp"
#include "qtheta/specfun.hpp"
#include "qtheta/testfn.hpp"
#include "qtheta/theta.hpp"

namespace qtheta {

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

// ---- 1: alpha = 0 closed form

Outcome closed_form(const AcceptanceOptions&)
{
    const auto w = SpectralWindow::unit(0.0);
    double worst = 0.0;
    for (double P : {1.0, 2.0, 5.0}) {
        const double exact = std::exp(-2.0 * kPi * P);
        for (const PhiValue& v : {phi_abel(P, 1.0, w), phi_spectral(P, 1.0, w)})
            worst = std::max(worst, std::abs(v.value / exact - 1.0));
    }
    return {worst <= 1e-8, "max rel error " + sci(worst) + " (limit 1e-8)"};
}

// ---- 2: route agreement

Outcome route_agreement(const AcceptanceOptions&)
{
    const SpectralWindow windows[] = {SpectralWindow::long_window(3.0), SpectralWindow::long_window(10.0),
                                      SpectralWindow::gaussian(kPi / 4, 2.0)};
    double worst = 0.0;
    std::string where;
    int points = 0;
    for (const auto& w : windows)
        for (double tau : {-4.0, -1.0, -0.25, 0.25, 1.0, 4.0})
            for (double ratio : {1.001, 1.01, 1.5, 3.0, 10.0}) {
                const double P = ratio * std::abs(tau);
                const double a = phi_abel(P, tau, w).value, s = phi_spectral(P, tau, w).value;
                const double rel = std::abs(a - s) / std::max(std::abs(a), 1e-30);
                ++points;
                if (rel > worst) {
                    worst = rel;
                    where = w.describe() + " tau=" + sci(tau) + " P=" + sci(P);
                }
            }
    return {worst <= 1e-6, std::to_string(points) + " points, max rel diff " + sci(worst) + " at " + where};
}

// ---- 3: Selberg round trip

Outcome selberg(const AcceptanceOptions&)
{
    double worst = 0.0;
    for (double T : {3.0, 10.0}) {
        const auto w = SpectralWindow::long_window(T);
        const double ts[] = {0.0, 1.0, 5.0, T};
        for (double tau : {0.5, 1.0, 2.0}) {
            const auto fwd = selberg_forward(w, tau, std::span<const double>(ts));
            for (std::size_t i = 0; i < 4; ++i) {
                const double h = h_transform(ts[i], tau, w);
                worst = std::max(worst, std::abs(fwd[i] - h) / std::abs(h));
            }
        }
    }
    return {worst <= 1e-4, "max rel error " + sci(worst) + " (limit 1e-4)"};
}

// ---- 4: Fourier identity by quadrature

Outcome fourier(const AcceptanceOptions&)
{
    using Rule = boost::math::quadrature::gauss<double, 30>;
    const auto& xs = Rule::abscissa();
    const auto& ws = Rule::weights();
    double worst = 0.0;
    for (double tau : {0.5, 2.0})
        for (double alpha : {0.0, kPi / 4, kPi / 2 - 0.1}) {
            const auto w = SpectralWindow::unit(alpha);
            // |h| <= 2 sqrt|tau| cosh(alpha t) e^{-pi t / 2} (1 + t) up to O(1)
            double t_max = 0.0;
            while (std::cosh(alpha * t_max) * std::exp(-kPi * t_max / 2) * (1.0 + t_max) > 1e-17) t_max += 1.0;
            std::vector<double> nodes, weights;
            for (double a = 0.0; a < t_max; a += 1.0)
                for (std::size_t i = 0; i < xs.size(); ++i)
                    for (double sgn : {-1.0, 1.0}) {
                        const double t = a + 0.5 + sgn * 0.5 * xs[i];
                        nodes.push_back(t);
                        weights.push_back(0.5 * ws[i] * h_transform(t, tau, w));
                    }
            // the kernel peaks at r = 0, which sets the scale
            const double scale = std::abs(fourier_kernel(0.0, tau, alpha));
            for (double r : {0.0, 1.0, 2.0}) {
                double I = 0.0;
                for (std::size_t i = 0; i < nodes.size(); ++i) I += weights[i] * std::cos(r * nodes[i]);
                // (1 / 2 pi) int_R = (1 / pi) int_0^inf for the even integrand
                I /= kPi;
                worst = std::max(worst, std::abs(I - fourier_kernel(r, tau, alpha)) / scale);
            }
        }
    return {worst <= 1e-8, "max error relative to the kernel peak " + sci(worst) + " (limit 1e-8)"};
}

// ---- 5: PDE residual

Outcome pde(const AcceptanceOptions&)
{
    const std::array<double, 4> points[] = {{1.0, 0.5, 0.4, 0.3}, {0.3, 0.9, 0.1, 0.2}, {0.2, 0.6, 0.7, 0.3},
                                            {1.1, 0.2, 0.6, 0.4}, {0.9, 0.6, 0.1, 0.7}, {0.4, 1.0, 0.3, 0.1},
                                            {0.7, 0.2, 0.9, 0.1}, {1.3, 0.7, 0.5, 0.2}, {0.6, 0.8, 0.8, 0.3},
                                            {1.5, 0.8, 0.6, 0.4}};
    const auto w = SpectralWindow::long_window(3.0);
    double worst = 0.0, ratio_lo = 1e300, ratio_hi = 0.0;
    for (const auto& p : points) {
        const PdeResult r = pde_residual(p, w, 1e-3, true);
        worst = std::max(worst, std::abs(r.residual) / r.scale);
        // plain differences at coarse steps are dominated by the O(h^2) error
        const double coarse = pde_residual(p, w, 0.01, false).residual;
        const double fine = pde_residual(p, w, 0.005, false).residual;
        const double ratio = coarse / fine;
        ratio_lo = std::min(ratio_lo, ratio);
        ratio_hi = std::max(ratio_hi, ratio);
    }
    // alpha = 0: Phi = e^{-2 pi P} solves the equation exactly
    const PdeResult g = pde_residual({1.2, 0.5, 0.4, 0.6}, SpectralWindow::unit(0.0), 1e-3, true);
    const double gauss = std::abs(g.residual) / g.scale;
    const bool pass = worst <= 1e-4 && gauss <= 1e-4 && ratio_lo >= 3.0 && ratio_hi <= 5.0;
    return {pass, "max scaled residual " + sci(worst) + ", alpha=0 " + sci(gauss) + ", step ratios in ["
                      + sci(ratio_lo) + ", " + sci(ratio_hi) + "]"};
}

// ---- 6: golden counts

Outcome golden_counts(const AcceptanceOptions&)
{
    const LatticeSpec spec(1, 1);
    const auto members = enumerate_region(spec, Region(RegionKind::Omega, 1.0, 1.0));
    const auto free_pairs = pair_count(spec, RegionSet::Omega, 1.0, 1.0).count;
    const auto heart_pairs = pair_count(spec, RegionSet::Omega, 1.0, 1.0, PairConstraint{0.0}).count;

    // oracle: entries in [-2, 2] cover P <= 1 since m^2 <= 2P
    std::vector<std::array<int, 3>> box;  // det, rot4 = 4 rot, dil4 = 4 dil
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c)
                for (int d = -2; d <= 2; ++d) {
                    if (a == 0 && b == 0 && c == 0 && d == 0)
                        continue;
                    const int sq2 = a * a + b * b + c * c + d * d;  // 2P
                    const int rot4 = (b + c) * (b + c) + (a - d) * (a - d);
                    const int dil4 = (a + d) * (a + d) + (b - c) * (b - c);
                    if (sq2 <= 2 && rot4 <= 4)
                        box.push_back({a * d - b * c, rot4, dil4});
                }
    std::uint64_t oracle_free = 0, oracle_heart = 0;
    for (const auto& u : box)
        for (const auto& v : box)
            if (u[0] == v[0]) {
                ++oracle_free;
                if (u[1] * u[2] == v[1] * v[2])
                    ++oracle_heart;
            }
    const bool pass = members.size() == 32 && box.size() == 32 && free_pairs == 608 && oracle_free == 608
                      && heart_pairs == 352 && oracle_heart == 352;
    std::ostringstream os;
    os << "|Omega*(1,1)| = " << members.size() << " (oracle " << box.size() << "), pairs " << free_pairs
       << " (oracle " << oracle_free << "), heart=0 pairs " << heart_pairs << " (oracle " << oracle_heart << ")";
    return {pass, os.str()};
}

// ---- 7, 11: sweeps

void maybe_emit(const CountReport& r, const AcceptanceOptions& opts, const std::string& stem)
{
    if (opts.out_dir.empty())
        return;
    std::filesystem::create_directories(opts.out_dir);
    report_emit(r, ReportFormat::Csv, opts.out_dir / (stem + ".csv"));
    report_emit(r, ReportFormat::Json, opts.out_dir / (stem + ".json"));
}

std::int64_t sweep_n_max(const AcceptanceOptions& opts)
{
    return opts.fast ? 10 : 15;
}

Outcome proposition_sweeps(const AcceptanceOptions& opts)
{
    std::ostringstream os;
    bool pass = true;
    for (Proposition p : {Proposition::OmegaProp, Proposition::PsiProp}) {
        VerifyOptions vo;
        vo.jobs = opts.jobs;
        const CountReport r = verify_bound(p, default_prop_grid(sweep_n_max(opts)), vo);
        maybe_emit(r, opts, "acceptance_" + to_string(p));
        double fit_max = 0.0, val_max = 0.0;
        for (const auto& row : r.rows) (row.N <= 6 ? fit_max : val_max) = std::max(row.N <= 6 ? fit_max : val_max, row.ratio);
        pass = pass && r.constant > 0.0 && r.flagged() == 0;
        os << to_string(p) << ": C=" << sci(r.constant) << " max ratio N<=6 " << sci(fit_max) << ", N>6 "
           << sci(val_max) << ", flagged " << r.flagged() << "/" << r.rows.size() << "; ";
    }
    return {pass, os.str()};
}

// ---- 8: emptiness

struct EmptinessPoint {
    LatticeSpec spec;
    RegionKind kind;
    double delta;
    double K;
};

std::vector<EmptinessPoint> emptiness_points(std::int64_t n_max)
{
    const BoundGrid grid = default_prop_grid(n_max);
    std::vector<EmptinessPoint> out;
    for (auto N : grid.Ns)
        for (auto ell : N == 1 ? std::vector<std::int64_t>{1} : std::vector<std::int64_t>{1, N})
            for (const auto& ng : grid.gs) {
                const double H = height(ng.g.point(), N).H;
                for (RegionKind kind : {RegionKind::Omega, RegionKind::Psi})
                    for (double delta : grid.deltas)
                        out.push_back({LatticeSpec(N, ell, ng.g), kind, delta,
                                       emptiness_scale(static_cast<double>(ell), H, delta)});
            }
    return out;
}

Outcome emptiness(const AcceptanceOptions& opts)
{
    const double c = frozen::kEmptiness;
    if (!(c > 0.0))
        return {false, "emptiness constant not fitted"};
    std::size_t bad_cert = 0, bad_enum = 0, total = 0;
    double worst = 1e300;
    for (const auto& pt : emptiness_points(sweep_n_max(opts))) {
        ++total;
        const double threshold = c * pt.K;
        const double lambda1 = successive_minima(pt.spec, pt.kind, pt.delta).front();
        worst = std::min(worst, lambda1 / pt.K);
        if (!(lambda1 > threshold))
            ++bad_cert;
        if (!enumerate_region(pt.spec, Region(pt.kind, pt.delta, threshold * (1.0 - 1e-9))).empty())
            ++bad_enum;
    }
    std::ostringstream os;
    os << total << " grid points, c=" << sci(c) << ", min lambda1/K " << sci(worst) << ", certificate failures "
       << bad_cert << ", nonempty below threshold " << bad_enum;
    return {bad_cert == 0 && bad_enum == 0, os.str()};
}

// ---- 9: spacing lemma

Outcome spacing(const AcceptanceOptions&)
{
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ux(-0.5, 0.5), ly(std::log(1e-3), std::log(10.0));
    std::size_t violations = 0, samples = 0;
    double worst = 1e300;
    for (std::int64_t N : {1, 2, 3, 5, 6, 10})
        for (int s = 0; s < 1000; ++s) {
            const HalfPlanePoint z(ux(rng), std::exp(ly(rng)));
            const HalfPlanePoint r = height(z, N).image;
            ++samples;
            const double im_margin = r.y - std::sqrt(3.0) / (2.0 * N);
            worst = std::min(worst, im_margin);
            if (im_margin < -1e-12)
                ++violations;
            for (std::int64_t c = -50; c <= 50; ++c) {
                if (c % N != 0)
                    continue;
                const double need = static_cast<double>(std::gcd(c, N)) / N;
                for (std::int64_t d = -50; d <= 50; ++d) {
                    if (c == 0 && d == 0)
                        continue;
                    const double re = c * r.x + d, im = c * r.y;
                    const double margin = re * re + im * im - need;
                    worst = std::min(worst, margin);
                    if (margin < -1e-12)
                        ++violations;
                }
            }
        }
    return {violations == 0, std::to_string(samples) + " reduced points, violations " + std::to_string(violations)
                                 + ", smallest margin " + sci(worst)};
}

// ---- 10: theta

Outcome theta(const AcceptanceOptions&)
{
    double jacobi = 0.0;
    for (int m = -30; m <= 30; ++m) jacobi += std::exp(-kPi * m * m);
    const double oracle = std::pow(jacobi, 4);
    ThetaConfig cfg;
    const double golden = std::abs(theta_eval(cfg, HalfPlanePoint(0.0, 1.0)).value - oracle);

    double defect = 0.0;
    const HalfPlanePoint z(0.1234, 0.8);
    const std::complex<double> zc(z.x, z.y);
    const std::pair<std::int64_t, std::vector<std::array<std::int64_t, 4>>> samples[] = {
        {1, {{1, 1, 0, 1}, {0, -1, 1, 0}, {2, 1, 1, 1}, {1, 0, 1, 1}, {1, -2, 1, -1}}},
        {5, {{1, 1, 0, 1}, {1, 0, 5, 1}, {3, 1, 5, 2}, {2, 1, 5, 3}, {1, -1, -5, 6}}},
    };
    for (const auto& [N, mats] : samples) {
        cfg.spec = LatticeSpec(N, 1);
        const std::complex<double> base = theta_eval(cfg, z).value;
        for (const auto& m : mats) {
            const std::complex<double> w =
                (static_cast<double>(m[0]) * zc + static_cast<double>(m[1]))
                / (static_cast<double>(m[2]) * zc + static_cast<double>(m[3]));
            const std::complex<double> moved = theta_eval(cfg, HalfPlanePoint(w.real(), w.imag())).value;
            defect = std::max(defect, std::abs(moved - base) / std::abs(base));
        }
    }
    return {golden <= 1e-8 && defect <= 1e-4,
            "golden |theta - theta3^4| " + sci(golden) + " (limit 1e-8), Gamma0(N) defect " + sci(defect)
                + " (limit 1e-4)"};
}

// ---- 11: Conjecture scan

Outcome conjecture_scan(const AcceptanceOptions& opts)
{
    VerifyOptions vo;
    vo.jobs = opts.jobs;
    const CountReport r = verify_bound(Proposition::HeartConjecture, default_heart_grid(sweep_n_max(opts)), vo);
    maybe_emit(r, opts, "acceptance_heart");
    std::ostringstream os;
    os << r.rows.size() << " rows, max ratio " << sci(r.max_ratio()) << ", C=" << sci(r.constant) << ", flagged "
       << r.flagged() << " (report only)";
    const bool finite = std::all_of(r.rows.begin(), r.rows.end(), [](const CountRow& row) { return std::isfinite(row.ratio); });
    return {!r.rows.empty() && finite, os.str()};
}

// ---- 12: appendix envelopes

Outcome appendix(const AcceptanceOptions&)
{
    const AppendixReport r = verify_appendix_bounds();
    const double kb = r.bessel_max(), kx = r.xi_max();
    const bool pass = r.envelopes_positive && std::isfinite(kb) && std::isfinite(kx) && frozen::kBesselEnvelope > 0.0
                      && frozen::kXiEnvelope > 0.0 && kb <= frozen::kBesselEnvelope && kx <= frozen::kXiEnvelope;
    return {pass, "K ratio " + sci(kb) + " (C=" + sci(frozen::kBesselEnvelope) + "), Xi ratio " + sci(kx)
                      + " (C=" + sci(frozen::kXiEnvelope) + ")"};
}

struct Criterion {
    const char* name;
    Outcome (*run)(const AcceptanceOptions&);
};

const Criterion kCriteria[kCriterionCount] = {
    {"alpha=0 closed form", closed_form},
    {"route agreement", route_agreement},
    {"selberg round trip", selberg},
    {"fourier identity", fourier},
    {"pde residual", pde},
    {"golden counts", golden_counts},
    {"proposition sweeps", proposition_sweeps},
    {"emptiness thresholds", emptiness},
    {"spacing lemma", spacing},
    {"theta golden value", theta},
    {"conjecture scan", conjecture_scan},
    {"appendix envelopes", appendix},
};

double round_up(double v)
{
    if (!(v > 0.0))
        return v;
    const double unit = std::pow(10.0, std::floor(std::log10(v)) - 2);
    return std::ceil(v / unit) * unit;
}

double round_down(double v)
{
    if (!(v > 0.0))
        return v;
    const double unit = std::pow(10.0, std::floor(std::log10(v)) - 2);
    return std::floor(v / unit) * unit;
}

}  // namespace

std::string criterion_name(int id)
{
    if (id < 1 || id > kCriterionCount)
        throw std::out_of_range("no acceptance criterion " + std::to_string(id));
    return kCriteria[id - 1].name;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts)
{
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Outcome o = kCriteria[id - 1].run(opts);
        r.pass = o.pass;
        r.detail = o.detail;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::span<const int> ids)
{
    std::vector<int> todo(ids.begin(), ids.end());
    if (todo.empty())
        for (int i = 1; i <= kCriterionCount; ++i) todo.push_back(i);
    std::vector<CriterionResult> out;
    for (int id : todo) out.push_back(run_criterion(id, opts));
    return out;
}

std::string format_result(const CriterionResult& r)
{
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1fs", r.seconds);
    return std::string(r.pass ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + ": " + r.detail + " ("
           + secs + ")";
}

DecaySweep decay_sweep()
{
    const SpectralWindow windows[] = {SpectralWindow::unit(0.0), SpectralWindow::long_window(3.0),
                                      SpectralWindow::long_window(10.0), SpectralWindow::gaussian(kPi / 4, 2.0)};
    DecaySweep out;
    for (const auto& w : windows)
        for (double tau : {0.25, 1.0, 4.0})
            for (double ratio : {1.0, 1.01, 1.5, 3.0, 10.0, 30.0}) {
                const double P = ratio * tau, weight = std::pow(1.0 + P, 6);
                out.q_max = std::max(out.q_max, std::abs(Q_eval(P, tau, w)) * weight);
                out.phi_max = std::max(out.phi_max, std::abs(phi_abel(P, tau, w).value) * weight);
            }
    return out;
}

FittedConstants fit_constants(int jobs)
{
    FittedConstants c;
    VerifyOptions vo;
    vo.jobs = jobs;
    auto fit = [&](Proposition p, const BoundGrid& g) { return round_up(2.0 * verify_bound(p, g, vo).max_ratio()); };
    const BoundGrid prop = default_prop_grid(6), heart = default_heart_grid(6);
    c.omega = fit(Proposition::OmegaProp, prop);
    c.psi = fit(Proposition::PsiProp, prop);
    c.tracefree = fit(Proposition::TraceFreeProp, prop);
    c.heart = fit(Proposition::HeartConjecture, heart);
    c.upper = fit(Proposition::UpperTriangular, heart);

    double empt = 1e300, tf = 1e300;
    for (const auto& pt : emptiness_points(6)) {
        empt = std::min(empt, successive_minima(pt.spec, pt.kind, pt.delta).front() / pt.K);
        if (pt.kind == RegionKind::Psi)
            tf = std::min(tf, successive_minima(pt.spec, pt.kind, pt.delta, Sublattice::TraceFree).front() / pt.K);
    }
    c.emptiness = round_down(0.5 * empt);
    c.tracefree_lambda1 = round_down(0.5 * tf);

    const AppendixReport app = verify_appendix_bounds();
    c.bessel = round_up(2.0 * app.bessel_max());
    c.xi = round_up(2.0 * app.xi_max());
    const DecaySweep d = decay_sweep();
    c.q_decay = round_up(2.0 * d.q_max);
    c.phi_decay = round_up(2.0 * d.phi_max);
    return c;
}

std::string frozen_constants_header(const FittedConstants& c)
{
    auto v = [](double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.6g", x);  // values carry 3 significant digits
        std::string s = buf;
        if (s.find_first_of(".e") == std::string::npos)
            s += ".0";
        return s;
    };
    std::ostringstream os;
    os << "#pragma once\n\n"
          "// Frozen constants. Version "
       << frozen::kVersion
       << ".\n"
          "//\n"
          "// Each value was produced by `qtheta fit` (src/acceptance.cpp, fit_constants) and is\n"
          "// the sweep maximum times the stated safety factor, rounded up. Regenerate with\n"
          "//   build/qtheta fit\n"
          "// and bump the version when any value changes.\n\n"
          "namespace qtheta::frozen {\n\n"
          "inline constexpr int kVersion = "
       << frozen::kVersion
       << ";\n\n"
          "// counting propositions; sweep: squarefree N <= 6, ell in {1, N}, L = 1..16,\n"
          "// delta in {1, 1/4, 1/16}, g in {I, diag(2, 1/2)}; factor 2\n"
          "inline constexpr double kOmegaProp = "
       << v(c.omega) << ";\ninline constexpr double kPsiProp = " << v(c.psi)
       << ";\n// trace-free Psi point count, same sweep; factor 2\ninline constexpr double kTraceFreeProp = "
       << v(c.tracefree)
       << ";\n// Conjecture scan threshold (report only); sweep: Conjecture grid, N <= 6; factor 2\n"
          "inline constexpr double kHeartConjecture = "
       << v(c.heart)
       << ";\n// upper-triangular contribution bound, same grid as the Conjecture scan; factor 2\n"
          "inline constexpr double kUpperTriangular = "
       << v(c.upper)
       << ";\n\n// emptiness: c * min{ell^-1/2, ell^-1 H^-1 delta^-1/2} <= lambda_1 on the sweep\n"
          "// (minimum of lambda_1 / K over N <= 6, times 1/2)\ninline constexpr double kEmptiness = "
       << v(c.emptiness)
       << ";\n// trace-free lambda_1 >= c * K (minimum over N <= 6, times 1/2)\n"
          "inline constexpr double kTraceFreeLambda1 = "
       << v(c.tracefree_lambda1)
       << ";\n\n// Appendix envelopes; sweep: verify_appendix_bounds default grid; factor 2\n"
          "inline constexpr double kBesselEnvelope = "
       << v(c.bessel) << ";\ninline constexpr double kXiEnvelope = " << v(c.xi)
       << ";\n\n// decay |Q(P;tau)| <= C (1+P)^-6 and |Phi| <= C (1+P)^-6; sweep: decay_sweep; factor 2\n"
          "inline constexpr double kQDecay = "
       << v(c.q_decay) << ";\ninline constexpr double kPhiDecay = " << v(c.phi_decay)
       << ";\n\n}  // namespace qtheta::frozen\n";
    return os.str();
}

}  // namespace qtheta
