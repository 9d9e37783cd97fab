#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qtheta/testfn.hpp"
#include "qtheta/detail/window_impl.hpp"

namespace qtheta {

namespace {

constexpr double kPi = std::numbers::pi;

void check_alpha(double alpha)
{
    if (!(alpha >= 0.0 && alpha < kPi / 2))
        throw std::invalid_argument("window: alpha must lie in [0, pi/2)");
}

}  // namespace

SpectralWindow::SpectralWindow(Kind kind, double alpha) : kind_(kind), alpha_(alpha)
{
    check_alpha(alpha);
}

SpectralWindow SpectralWindow::unit(double alpha)
{
    return SpectralWindow(Kind::Unit, alpha);
}

SpectralWindow SpectralWindow::long_window(double T)
{
    if (!(T >= 3.0) || !std::isfinite(T))
        throw std::invalid_argument("window: the long window needs T >= 3");
    return SpectralWindow(Kind::Unit, kPi / 2 - 1.0 / T);
}

SpectralWindow SpectralWindow::cosine_sum(double alpha, std::vector<double> coeffs, std::vector<double> freqs)
{
    if (coeffs.empty() || coeffs.size() != freqs.size())
        throw std::invalid_argument("window: cosine sum needs matching nonempty coefficient and frequency lists");
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        if (!std::isfinite(coeffs[j]) || !std::isfinite(freqs[j]))
            throw std::invalid_argument("window: cosine sum entries must be finite reals");
    SpectralWindow w(Kind::CosineSum, alpha);
    w.coeffs_ = std::move(coeffs);
    w.freqs_ = std::move(freqs);
    for (double& b : w.freqs_) b = std::abs(b);
    return w;
}

SpectralWindow SpectralWindow::gaussian(double alpha, double sigma)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("window: Gaussian sigma must be positive");
    SpectralWindow w(Kind::Gaussian, alpha);
    w.sigma_ = sigma;
    return w;
}

double SpectralWindow::shape(double t) const
{
    switch (kind_) {
    case Kind::Unit: return 1.0;
    case Kind::CosineSum: {
        double s = 0.0;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) s += coeffs_[j] * std::cos(freqs_[j] * t);
        return s;
    }
    case Kind::Gaussian: return std::exp(-t * t / (2.0 * sigma_ * sigma_));
    }
    return 0.0;
}

double SpectralWindow::shape_bound(double t) const
{
    switch (kind_) {
    case Kind::Unit: return 1.0;
    case Kind::CosineSum: {
        double s = 0.0;
        for (double c : coeffs_) s += std::abs(c);
        return s;
    }
    case Kind::Gaussian: return shape(t);
    }
    return 0.0;
}

double SpectralWindow::max_freq() const
{
    if (kind_ != Kind::CosineSum)
        return 0.0;
    return *std::max_element(freqs_.begin(), freqs_.end());
}

double SpectralWindow::measure_density(double ell) const
{
    if (kind_ != Kind::Gaussian)
        return 0.0;
    return sigma_ / std::sqrt(2.0 * kPi) * std::exp(-sigma_ * sigma_ * ell * ell / 2.0);
}

std::string SpectralWindow::describe() const
{
    std::ostringstream os;
    os.precision(12);
    switch (kind_) {
    case Kind::Unit: os << "unit"; break;
    case Kind::CosineSum:
        os << "cosine-sum[";
        for (std::size_t j = 0; j < coeffs_.size(); ++j) os << (j ? "," : "") << coeffs_[j] << "@" << freqs_[j];
        os << "]";
        break;
    case Kind::Gaussian: os << "gaussian(sigma=" << sigma_ << ")"; break;
    }
    os << " alpha=" << alpha_;
    return os.str();
}

std::string to_string(PhiRoute r)
{
    return r == PhiRoute::Abel ? "abel" : "spectral";
}

double h_transform(double t, double tau, const SpectralWindow& w, const Precision& prec)
{
    if (tau == 0.0 || !std::isfinite(tau))
        throw std::invalid_argument("h_transform: tau must be a nonzero real");
    const double at = std::abs(t), atau = std::abs(tau);
    // cosh(alpha t) e^{-pi|t|/2}, combined so that nothing overflows
    const double a = w.alpha();
    const double ch = 0.5 * (std::exp((a - kPi / 2) * at) + std::exp((-a - kPi / 2) * at));
    return w.shape(t) * ch * 2.0 * std::sqrt(atau) * bessel_K_imag_scaled(at, 2.0 * kPi * atau, prec);
}

double fourier_kernel(double r, double tau, double alpha)
{
    check_alpha(alpha);
    const double at = std::abs(tau);
    return std::sqrt(at) * std::exp(-2.0 * kPi * at * std::cos(alpha) * std::cosh(r))
           * std::cos(2.0 * kPi * at * std::sin(alpha) * std::sinh(r));
}

namespace detail {

namespace {

double sinc(double x)
{
    return std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}

}  // namespace

QTerm q_term(double P, double R, double ell, double k, double m)
{
    const double C = std::cosh(ell), S = std::sinh(ell);
    const double ep = std::exp(ell), em = std::exp(-ell);
    const double PmR = (P - R > 0.25 * P) ? P - R : (P * P - R * R) / (P + R);
    // P C -+ R S and R C -+ P S without cancellation
    const double Xm = 0.5 * (PmR * ep + (P + R) * em);
    const double Xp = P * C + R * S;
    const double Ym = 0.5 * (-PmR * ep + (R + P) * em);
    const double Yp = R * C + P * S;
    const double Em = std::exp(-k * Xm), Ep = std::exp(-k * Xp);

    const double A = k * R * S, B = m * R * C, Cp = m * P * S;
    const double eC = 0.5 * (Em + Ep);  // e^{-kPC} cosh A
    const double eS = 0.5 * (Em - Ep);  // e^{-kPC} sinh A
    const double eShc = A > 1e-4 ? eS / A : std::exp(-k * P * C) * (1.0 + A * A / 6.0);
    const double cB = std::cos(B), sB = std::sin(B), cC = std::cos(Cp), sC = std::sin(Cp);
    const double sincB = sinc(B);

    QTerm out;
    out.q = 0.5 * (Em * std::cos(m * Ym) + Ep * std::cos(m * Yp));
    out.dq = -k * C * out.q + k * k * S * S * P * eShc * cB * cC - eC * m * m * C * C * P * sincB * cC
             - m * S * eC * cB * sC + eC * k * S * P * m * C * sincB * sC + k * S * eShc * m * C * P * cB * sC
             + m * S * eS * sB * cC;
    return out;
}

double majorant_tail(double P, double W, double ell, double k, double m)
{
    const double C = std::cosh(ell), S = std::sinh(ell);
    const double a = k * std::exp(-ell);
    const double b = k * C + 2.0 * m * S;
    const double c = (k * S + m * C) * (k * S + m * C);
    const double sa = std::sqrt(a);
    const double I0 = 0.5 * std::sqrt(kPi / a) * std::erfc(sa * W);
    const double I2 = W * std::exp(-a * W * W) / (2.0 * a) + I0 / (2.0 * a);
    return std::exp(-a * P) * ((b + c * P) * I0 + c * I2);
}

double majorant_sup(double lo, double hi, double ell, double k, double m)
{
    // majorant_tail(P, 0) = e^{-a P} I0 (b + c / (2a) + c P): unimodal with its peak at 1/a - (b + c/(2a)) / c
    const double C = std::cosh(ell), S = std::sinh(ell);
    const double a = k * std::exp(-ell);
    const double b = k * C + 2.0 * m * S;
    const double c = (k * S + m * C) * (k * S + m * C);
    const double peak = c > 0.0 ? 1.0 / a - (b + c / (2.0 * a)) / c : lo;
    return majorant_tail(std::clamp(peak, lo, hi), 0.0, ell, k, m);
}

double q_rate(const SpectralWindow& w, double& m)
{
    m = 2.0 * kPi * std::sin(w.alpha());
    return 2.0 * kPi * std::cos(w.alpha());
}

double gaussian_ell_max(const SpectralWindow& w)
{
    // g(ell) e^{4 ell} < 1e-300 beyond this point
    const double s2 = w.sigma() * w.sigma();
    return (4.0 + std::sqrt(16.0 + 2.0 * s2 * 700.0)) / s2;
}

// int_0^inf g(ell) f(ell) d ell on fixed panels. `bound(ell)` must dominate |f| on
// [0, ell] and grow with ell, so a panel whose bound is negligible against the
// running total is skipped.
template <class F, class B>
double integrate_ell(const SpectralWindow& w, F&& f, B&& bound)
{
    const double L = gaussian_ell_max(w);
    const double width = std::min(1.0, 1.0 / w.sigma());
    const int n = static_cast<int>(std::ceil(L / width));
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = i * width, b = std::min(L, a + width);
        if (total != 0.0 && (b - a) * w.measure_density(a) * bound(b) < 1e-17 * std::abs(total))
            continue;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [&](double ell) { return w.measure_density(ell) * f(ell); }, a, b, 0, 0.0);
    }
    return total;
}

double majorant(double P, double ell, double k, double m)
{
    const double C = std::cosh(ell), S = std::sinh(ell);
    return std::exp(-k * P * std::exp(-ell)) * (k * C + 2.0 * m * S + P * (k * S + m * C) * (k * S + m * C));
}

}  // namespace detail

namespace {

double check_P(double P, double tau)
{
    const double at = std::abs(tau);
    if (!std::isfinite(P) || !std::isfinite(tau))
        throw std::invalid_argument("Q: P and tau must be finite");
    if (P < at) {
        if (at - P > 1e-12 * at)
            throw std::invalid_argument("Q: need P >= |tau|");
        return 0.0;
    }
    return std::sqrt((P - at) * (P + at));
}

template <class Pick>
double q_combine(double P, double tau, const SpectralWindow& w, Pick pick)
{
    const double R = check_P(P, tau);
    double m = 0.0;
    const double k = detail::q_rate(w, m);
    switch (w.kind()) {
    case SpectralWindow::Kind::Unit: return 0.5 * pick(detail::q_term(P, R, 0.0, k, m));
    case SpectralWindow::Kind::CosineSum: {
        double s = 0.0;
        for (std::size_t j = 0; j < w.coeffs().size(); ++j)
            s += w.coeffs()[j] * pick(detail::q_term(P, R, w.freqs()[j], k, m));
        return 0.5 * s;
    }
    case SpectralWindow::Kind::Gaussian:
        return detail::integrate_ell(
            w, [&](double ell) { return pick(detail::q_term(P, R, ell, k, m)); },
            [&](double ell) { return detail::majorant(P, ell, k, m); });
    }
    return 0.0;
}

}  // namespace

double Q_eval(double P, double tau, const SpectralWindow& w)
{
    return q_combine(P, tau, w, [](const detail::QTerm& q) { return q.q; });
}

double Q_P(double P, double tau, const SpectralWindow& w)
{
    return q_combine(P, tau, w, [](const detail::QTerm& q) { return q.dq; });
}

double abel_tail_bound(double P, double W, const SpectralWindow& w)
{
    if (!(P >= 0.0) || !(W >= 0.0))
        throw std::invalid_argument("abel tail: need P >= 0 and W >= 0");
    double m = 0.0;
    const double k = detail::q_rate(w, m);
    double s = 0.0;
    switch (w.kind()) {
    case SpectralWindow::Kind::Unit: s = 0.5 * detail::majorant_tail(P, W, 0.0, k, m); break;
    case SpectralWindow::Kind::CosineSum:
        for (std::size_t j = 0; j < w.coeffs().size(); ++j)
            s += 0.5 * std::abs(w.coeffs()[j]) * detail::majorant_tail(P, W, w.freqs()[j], k, m);
        break;
    case SpectralWindow::Kind::Gaussian:
        s = detail::integrate_ell(
            w, [&](double ell) { return detail::majorant_tail(P, W, ell, k, m); },
            [&](double ell) { return detail::majorant_tail(P, W, ell, k, m); });
        break;
    }
    return 2.0 * std::numbers::sqrt2 / kPi * s;
}

double phi_envelope(double P, const SpectralWindow& w)
{
    return abel_tail_bound(P, 0.0, w);
}

double phi_envelope_sup(double lo, double hi, const SpectralWindow& w)
{
    if (!(lo >= 0.0) || !(hi >= lo))
        throw std::invalid_argument("phi envelope: need 0 <= lo <= hi");
    double m = 0.0;
    const double k = detail::q_rate(w, m);
    // the sup of a sum is at most the sum of the termwise sups
    double s = 0.0;
    switch (w.kind()) {
    case SpectralWindow::Kind::Unit: s = 0.5 * detail::majorant_sup(lo, hi, 0.0, k, m); break;
    case SpectralWindow::Kind::CosineSum:
        for (std::size_t j = 0; j < w.coeffs().size(); ++j)
            s += 0.5 * std::abs(w.coeffs()[j]) * detail::majorant_sup(lo, hi, w.freqs()[j], k, m);
        break;
    case SpectralWindow::Kind::Gaussian:
        s = detail::integrate_ell(
            w, [&](double ell) { return detail::majorant_sup(lo, hi, ell, k, m); },
            [&](double ell) { return detail::majorant_sup(lo, hi, ell, k, m); });
        break;
    }
    return 2.0 * std::numbers::sqrt2 / kPi * s;
}

}  // namespace qtheta
