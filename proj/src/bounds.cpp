#include "qtheta/bounds.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qtheta/detail/sweep.hpp"
#include "qtheta/frozen_constants.hpp"

namespace qtheta {

std::string to_string(Proposition p)
{
    switch (p) {
    case Proposition::OmegaProp: return "omega";
    case Proposition::PsiProp: return "psi";
    case Proposition::TraceFreeProp: return "tracefree";
    case Proposition::HeartConjecture: return "heart";
    case Proposition::UpperTriangular: return "upper";
    }
    return "?";
}

Proposition proposition_from_string(const std::string& s)
{
    if (s == "omega") return Proposition::OmegaProp;
    if (s == "psi") return Proposition::PsiProp;
    if (s == "tracefree") return Proposition::TraceFreeProp;
    if (s == "heart") return Proposition::HeartConjecture;
    if (s == "upper") return Proposition::UpperTriangular;
    throw std::invalid_argument("unknown proposition '" + s + "'");
}

double bound_rhs(Proposition p, const BoundInputs& in)
{
    const double l = in.ell, N = in.N, H = in.H, d = in.delta, L = in.L;
    const double sl = std::sqrt(l), sd = std::sqrt(d);
    switch (p) {
    case Proposition::OmegaProp: {
        const double f1 = 1 + sl * H * sd + sl * H * d * L + l * l / N * d * L * L;
        const double f2 = 1 + sl * H * sd + sl * H * sd * L + l * l / N * d * L * L;
        return l * L * L * f1 * f2;
    }
    case Proposition::PsiProp: {
        const double f = 1 + sl * H * sd + l / std::sqrt(N) * L + l * H * sd * L + l * l / N * sd * L * L;
        return l * L * L * f * f;
    }
    case Proposition::TraceFreeProp:
        return 1 + (sl + l * H * sd) * L + (l * sl / std::sqrt(N) + l * sl * H * sd) * L * L
               + l * l / N * sd * L * L * L;
    case Proposition::HeartConjecture: {
        const double f = 1 + l * l / N * sd * L * L + std::pow(l, 4) / (N * N) * std::min(in.heart, d) * std::pow(L, 4)
                         + l * H * H + std::pow(l, 1.5) * H * H * std::pow(d, 0.25) * L + l * l * H * H * sd * L * L;
        return l * L * L * f;
    }
    case Proposition::UpperTriangular:
        return l * L * L * (1 + l * H * H * d + l * H * H * d * L + l * H * H * std::pow(d, 1.5) * L * L);
    }
    return 0.0;
}

double emptiness_scale(double ell, double H, double delta)
{
    return std::min(1.0 / std::sqrt(ell), 1.0 / (ell * H * std::sqrt(delta)));
}

std::vector<std::int64_t> squarefree_upto(std::int64_t n_max)
{
    std::vector<std::int64_t> out;
    for (std::int64_t n = 1; n <= n_max; ++n)
        if (is_squarefree(n))
            out.push_back(n);
    return out;
}

namespace {

std::vector<NamedG> default_gs()
{
    const auto I = GroupElement::identity();
    const auto a4 = GroupElement::from_rational({Rational(2), Rational(0), Rational(0), Rational(1, 2)});
    return {{I.descriptor(), I}, {a4.descriptor(), a4}};
}

double frozen_constant(Proposition p)
{
    switch (p) {
    case Proposition::OmegaProp: return frozen::kOmegaProp;
    case Proposition::PsiProp: return frozen::kPsiProp;
    case Proposition::TraceFreeProp: return frozen::kTraceFreeProp;
    case Proposition::HeartConjecture: return frozen::kHeartConjecture;
    case Proposition::UpperTriangular: return frozen::kUpperTriangular;
    }
    return 0.0;
}

struct Task {
    std::int64_t N;
    std::int64_t ell;
    std::size_t gi;
};

std::vector<CountRow> run_task(Proposition p, const BoundGrid& grid, const Task& t, const EnumerationBudget& budget)
{
    const auto& ng = grid.gs[t.gi];
    const LatticeSpec spec(t.N, t.ell, ng.g);
    const double H = height(ng.g.point(), t.N).H;
    std::vector<CountRow> rows;
    auto push = [&](double delta, double L, std::optional<double> heart, std::uint64_t count) {
        CountRow r;
        r.N = t.N;
        r.ell = t.ell;
        r.delta = delta;
        r.L = L;
        r.heart = heart;
        r.g = ng.name;
        r.count = count;
        BoundInputs in{static_cast<double>(t.N), static_cast<double>(t.ell), H, delta, L, heart.value_or(0.0)};
        r.rhs = bound_rhs(p, in);
        r.ratio = (count == 0 || r.rhs <= 0.0) ? 0.0 : static_cast<double>(count) / r.rhs;
        rows.push_back(std::move(r));
    };

    switch (p) {
    case Proposition::OmegaProp:
    case Proposition::PsiProp: {
        const auto tab = detail::region_pair_sweep(spec, grid.deltas, grid.Ls, budget);
        const auto& t2 = tab[p == Proposition::OmegaProp ? 0 : 1];
        for (std::size_t di = 0; di < grid.deltas.size(); ++di)
            for (std::size_t j = 0; j < grid.Ls.size(); ++j) push(grid.deltas[di], grid.Ls[j], std::nullopt, t2[di][j]);
        break;
    }
    case Proposition::TraceFreeProp: {
        const auto t2 = detail::tracefree_sweep(spec, grid.deltas, grid.Ls, budget);
        for (std::size_t di = 0; di < grid.deltas.size(); ++di)
            for (std::size_t j = 0; j < grid.Ls.size(); ++j) push(grid.deltas[di], grid.Ls[j], std::nullopt, t2[di][j]);
        break;
    }
    case Proposition::HeartConjecture:
    case Proposition::UpperTriangular: {
        const auto t3 = detail::heart_sweep(spec, grid.deltas, grid.Ls, grid.heart_factors,
                                            p == Proposition::UpperTriangular, budget);
        for (std::size_t di = 0; di < grid.deltas.size(); ++di)
            for (std::size_t j = 0; j < grid.Ls.size(); ++j)
                for (std::size_t h = 0; h < grid.heart_factors.size(); ++h)
                    push(grid.deltas[di], grid.Ls[j], grid.heart_factors[h] * grid.deltas[di], t3[di][j][h]);
        break;
    }
    }
    return rows;
}

std::string grid_text(Proposition p, const BoundGrid& grid)
{
    std::ostringstream os;
    os << to_string(p) << "|N";
    for (auto n : grid.Ns) os << ' ' << n;
    os << "|ells " << (grid.ells == EllChoice::OneAndN ? "oneN" : "all") << "|L";
    for (auto v : grid.Ls) os << ' ' << format_float(v);
    os << "|delta";
    for (auto v : grid.deltas) os << ' ' << format_float(v);
    os << "|heart";
    for (auto v : grid.heart_factors) os << ' ' << format_float(v);
    os << "|g";
    for (const auto& g : grid.gs) os << ' ' << g.name;
    return os.str();
}

}  // namespace

BoundGrid default_prop_grid(std::int64_t n_max)
{
    BoundGrid g;
    g.Ns = squarefree_upto(n_max);
    for (int L = 1; L <= 16; ++L) g.Ls.push_back(L);
    g.deltas = {1.0, 0.25, 0.0625};
    g.gs = default_gs();
    return g;
}

BoundGrid default_heart_grid(std::int64_t n_max)
{
    BoundGrid g;
    g.Ns = squarefree_upto(n_max);
    g.Ls = {1, 2, 4, 8, 16};
    g.deltas = {1.0, 0.25, 0.0625};
    g.heart_factors = {1.0, 0.25, 0.0625};
    g.gs = default_gs();
    return g;
}

CountReport verify_bound(Proposition p, const BoundGrid& grid, const VerifyOptions& opts)
{
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Task> tasks;
    for (auto N : grid.Ns) {
        std::vector<std::int64_t> ells;
        if (grid.ells == EllChoice::AllDivisors)
            ells = divisors(N);
        else
            ells = N == 1 ? std::vector<std::int64_t>{1} : std::vector<std::int64_t>{1, N};
        for (auto ell : ells)
            for (std::size_t gi = 0; gi < grid.gs.size(); ++gi) tasks.push_back({N, ell, gi});
    }

    std::vector<std::vector<CountRow>> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
            try {
                results[i] = run_task(p, grid, tasks[i], opts.budget);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    CountReport rep;
    rep.proposition = to_string(p);
    rep.constant = opts.constant > 0.0 ? opts.constant : frozen_constant(p);
    for (auto& rs : results)
        for (auto& r : rs) {
            r.flag = rep.constant > 0.0 && r.ratio > rep.constant;
            rep.rows.push_back(std::move(r));
        }
    rep.meta.timestamp = report_timestamp();
    rep.meta.config_hash = fnv1a_hex(grid_text(p, grid));
    rep.meta.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace qtheta
