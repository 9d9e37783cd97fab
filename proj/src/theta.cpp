#include "qtheta/theta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "qtheta/detail/enumerator.hpp"
#include "qtheta/detail/sweep.hpp"

namespace qtheta {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_config(const ThetaConfig& cfg)
{
    if (!(cfg.tol > 0.0) || !(cfg.abs_floor > 0.0) || !(cfg.p_cut > 0.0) || !std::isfinite(cfg.p_cut))
        throw std::invalid_argument("theta: tol, abs_floor and p_cut must be positive");
    if (cfg.max_doublings < 0)
        throw std::invalid_argument("theta: max_doublings must be nonnegative");
}

struct PhiKey {
    std::int64_t P4 = 0;
    std::int64_t det = 0;
    bool operator==(const PhiKey&) const = default;
};

struct PhiKeyHash {
    std::size_t operator()(const PhiKey& k) const noexcept
    {
        return std::hash<std::int64_t>()(k.P4) * 1000003u ^ std::hash<std::int64_t>()(k.det);
    }
};

// Phi(y^1/2 g^-1 gamma g) for the points of one scan; exact lattices share
// values between points with equal (P, det)
class ScaledPhi {
public:
    ScaledPhi(const ThetaConfig& cfg, const detail::Conjugator& cj, double y) : cfg_(cfg), cj_(cj), y_(y) {}

    double operator()(const detail::ScaledPoint& p)
    {
        if (cj_.exact()) {
            const PhiKey key{p.P4, p.det_key};
            if (const auto it = memo_.find(key); it != memo_.end())
                return it->second;
            const double v = eval(p);
            memo_.emplace(key, v);
            return v;
        }
        return eval(p);
    }

private:
    double eval(const detail::ScaledPoint& p) const
    {
        if (p.coeff == detail::Coeff{0, 0, 0, 0}) {
            // Phi(0) from the floor along P = tau; the floor alone would be off by O(tau_floor)
            const double e = kTauFloor;
            return 2.0 * phi_abel(e, e, cfg_.window, cfg_.phi_prec).value
                   - phi_abel(2.0 * e, 2.0 * e, cfg_.window, cfg_.phi_prec).value;
        }
        const double tau = y_ * static_cast<double>(p.det_key) / static_cast<double>(cfg_.spec.ell);
        const double P = std::max(y_ * p.P, std::abs(tau));
        return phi_abel(P, tau, cfg_.window, cfg_.phi_prec).value;
    }

    const ThetaConfig& cfg_;
    const detail::Conjugator& cj_;
    double y_;
    std::unordered_map<PhiKey, double, PhiKeyHash> memo_;
};

double henk_count(const std::vector<double>& minima, double radius)
{
    // at most 2^{n-1} prod floor(2 r / lambda_i + 1) points of a lattice in r times the unit ball
    double c = std::ldexp(1.0, static_cast<int>(minima.size()) - 1);
    for (double lam : minima) c *= std::floor(2.0 * radius / lam + 1.0);
    return c;
}

double shell_tail(const ThetaConfig& cfg, const std::vector<double>& minima, double p_scan, double y)
{
    double total = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double lo = std::ldexp(p_scan, k), hi = 2.0 * lo;
        const double env = phi_envelope_sup(lo, hi, cfg.window);
        const double term = env * henk_count(minima, std::sqrt(hi / y));
        total += term;
        if (term == 0.0 || (k >= 3 && term < 1e-10 * total))
            return total;
    }
    throw TruncationError("theta: the Phi envelope does not decay along the dyadic shells");
}

std::vector<double> unit_ball_minima(const ThetaConfig& cfg)
{
    // delta = 1 leaves the rotation part unconstrained, so this is the plain P ball
    MinimaOptions opts;
    opts.budget = cfg.budget;
    return successive_minima(cfg.spec, RegionKind::Omega, 1.0, Sublattice::Full, opts);
}

[[noreturn]] void fail_truncation(const char* what, double p_cut, double tail, double change)
{
    std::ostringstream os;
    os << what << ": no certified truncation up to p_cut=" << p_cut << " (tail " << tail << ", doubling change "
       << change << ")";
    throw TruncationError(os.str());
}

}  // namespace

double theta_tail_bound(const ThetaConfig& cfg, double p_scan, double y)
{
    check_config(cfg);
    if (!(y > 0.0) || !(p_scan > 0.0))
        throw std::invalid_argument("theta tail: need y > 0 and p_scan > 0");
    return shell_tail(cfg, unit_ball_minima(cfg), p_scan, y);
}

ThetaValue theta_eval(const ThetaConfig& cfg, const HalfPlanePoint& z)
{
    check_config(cfg);
    const double y = z.y, ell = static_cast<double>(cfg.spec.ell);
    // e(x det) only depends on x modulo ell
    const double x = std::fmod(z.x, ell);
    const detail::Conjugator cj(cfg.spec);
    const detail::BallScanner scanner(cj, detail::sublattice_basis(Sublattice::Full));
    const std::vector<double> minima = unit_ball_minima(cfg);
    ScaledPhi phi(cfg, cj, y);

    double p_cut = cfg.p_cut;
    ThetaValue out;
    for (int round = 0; round <= cfg.max_doublings; ++round, p_cut *= 2.0) {
        // one scan to 2 p_cut yields both the value and its half-cut comparison
        std::complex<double> full, half, det0;
        std::size_t terms = 0;
        scanner.scan(2.0 * p_cut / y, cfg.budget, [&](const detail::ScaledPoint& p) {
            const double v = phi(p);
            const double turns = x * static_cast<double>(p.det_key) / ell;
            const std::complex<double> term = std::polar(v, kTwoPi * (turns - std::floor(turns)));
            full += term;
            if (y * p.P <= p_cut)
                half += term;
            if (p.det_key == 0)
                det0 += term;
            ++terms;
        });
        out.value = y * full;
        out.det_zero = y * det0;
        out.p_cut = 2.0 * p_cut;
        out.tail_bound = y * shell_tail(cfg, minima, 2.0 * p_cut, y);
        out.doubling_change = y * std::abs(full - half);
        out.terms = terms;
        const double allowed = cfg.tol * std::max(std::abs(out.value), cfg.abs_floor);
        if (out.tail_bound <= allowed && out.doubling_change <= allowed)
            return out;
    }
    fail_truncation("theta_eval", out.p_cut, out.tail_bound, out.doubling_change);
}

L2Value l2_integrand(const ThetaConfig& cfg, double y)
{
    check_config(cfg);
    if (!(y > 0.0) || !std::isfinite(y))
        throw std::invalid_argument("l2_integrand: y must be a positive real");
    const detail::Conjugator cj(cfg.spec);
    const detail::BallScanner scanner(cj, detail::sublattice_basis(Sublattice::Full));
    const std::vector<double> minima = unit_ball_minima(cfg);
    ScaledPhi phi(cfg, cj, y);

    auto square_sum = [](const std::map<std::int64_t, double>& classes) {
        double s = 0.0;
        for (const auto& [key, v] : classes) s += v * v;
        return s;
    };

    double p_cut = cfg.p_cut;
    L2Value out;
    for (int round = 0; round <= cfg.max_doublings; ++round, p_cut *= 2.0) {
        std::map<std::int64_t, double> full, half;
        std::size_t terms = 0;
        scanner.scan(2.0 * p_cut / y, cfg.budget, [&](const detail::ScaledPoint& p) {
            if (p.coeff == detail::Coeff{0, 0, 0, 0})
                return;
            const double v = phi(p);
            full[p.det_key] += v;
            if (y * p.P <= p_cut)
                half[p.det_key] += v;
            ++terms;
        });
        double biggest = 0.0;
        for (const auto& [key, v] : full) biggest = std::max(biggest, std::abs(v));
        const double tail = shell_tail(cfg, minima, 2.0 * p_cut, y);
        out.value = square_sum(full);
        out.det_zero = full.contains(0) ? full.at(0) * full.at(0) : 0.0;
        out.p_cut = 2.0 * p_cut;
        // sum_n (|A_n + e_n|^2 - |A_n|^2) <= 2 max|A| sum e_n + (sum e_n)^2
        out.error_bound = 2.0 * biggest * tail + tail * tail;
        out.doubling_change = std::abs(out.value - square_sum(half));
        out.classes = full.size();
        out.terms = terms;
        const double allowed = cfg.tol * std::max(out.value, cfg.abs_floor);
        if (out.error_bound <= allowed && out.doubling_change <= allowed)
            return out;
    }
    fail_truncation("l2_integrand", out.p_cut, out.error_bound, out.doubling_change);
}

CountReport geometric_fourth_moment_bound(const GroupElement& g1, const GroupElement& g2, std::int64_t N, double T,
                                          const FourthMomentOptions& opts)
{
    if (!(T >= 3.0) || !std::isfinite(T))
        throw std::invalid_argument("fourth moment: T must be at least 3");
    if (N < 1 || !is_squarefree(N))
        throw std::invalid_argument("fourth moment: N must be a squarefree positive integer");
    if (!(opts.L_factor > 0.0) || !(opts.delta_factor > 0.0) || !(opts.heart_factor > 0.0))
        throw std::invalid_argument("fourth moment: range factors must be positive");

    // delta = 4^-j >= delta_factor T^-2
    std::vector<double> deltas;
    for (int j = 0; j < opts.max_delta_steps; ++j) {
        const double d = std::ldexp(1.0, -2 * j);
        if (j > 0 && d < opts.delta_factor / (T * T))
            break;
        deltas.push_back(d);
    }
    // heart = delta 2^-j; the admissible j depend on delta and are filtered per row
    std::vector<double> heart_factors;
    for (int j = 0; j < opts.max_heart_steps; ++j) heart_factors.push_back(std::ldexp(1.0, -j));

    CountReport report;
    report.proposition = "fourth-moment";
    report.constant = 0.0;
    const std::pair<const char*, const GroupElement*> gs[2] = {{"g1", &g1}, {"g2", &g2}};
    for (std::int64_t ell : divisors(N)) {
        const double L_top = std::max(1.0, opts.L_factor * std::sqrt(static_cast<double>(N) * T) / ell);
        std::vector<double> Ls;
        for (int j = 0; j < opts.max_L_steps && std::ldexp(1.0, j) <= L_top; ++j) Ls.push_back(std::ldexp(1.0, j));
        for (const auto& [name, g] : gs) {
            const LatticeSpec spec(N, ell, *g);
            const detail::Table3 counts = detail::heart_sweep(spec, deltas, Ls, heart_factors, false, opts.budget);
            for (std::size_t di = 0; di < deltas.size(); ++di)
                for (std::size_t li = 0; li < Ls.size(); ++li)
                    for (std::size_t h = 0; h < heart_factors.size(); ++h) {
                        const double heart = heart_factors[h] * deltas[di];
                        if (h > 0 && heart < opts.heart_factor * std::sqrt(deltas[di]) / T)
                            break;
                        CountRow row;
                        row.N = N;
                        row.ell = ell;
                        row.delta = deltas[di];
                        row.L = Ls[li];
                        row.heart = heart;
                        row.g = name;
                        row.count = counts[di][li][h];
                        row.rhs = static_cast<double>(ell) * Ls[li] * Ls[li] * heart;
                        row.ratio = static_cast<double>(row.count) / row.rhs;
                        report.rows.push_back(row);
                    }
        }
    }
    return report;
}

}  // namespace qtheta
