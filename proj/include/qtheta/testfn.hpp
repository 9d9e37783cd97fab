#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "qtheta/specfun.hpp"

namespace qtheta {

// h(t) cosh(alpha t) 2 sqrt|tau| K_{it}(2 pi |tau|) with one of three shapes h:
//   Unit       h = 1
//   CosineSum  h = sum_j c_j cos(beta_j t)
//   Gaussian   h = exp(-t^2 / (2 sigma^2))
class SpectralWindow {
public:
    enum class Kind { Unit, CosineSum, Gaussian };

    static SpectralWindow unit(double alpha);
    static SpectralWindow long_window(double T);  // Unit with alpha = pi/2 - 1/T
    static SpectralWindow cosine_sum(double alpha, std::vector<double> coeffs, std::vector<double> freqs);
    static SpectralWindow gaussian(double alpha, double sigma);

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double sigma() const { return sigma_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    const std::vector<double>& freqs() const { return freqs_; }

    double shape(double t) const;
    double shape_bound(double t) const;  // >= |shape| on the real line
    double max_freq() const;              // exponential type of the shape
    // density g of the shape's Fourier measure on [0, inf) (Gaussian only)
    double measure_density(double ell) const;

    std::string describe() const;

private:
    SpectralWindow(Kind kind, double alpha);
    Kind kind_ = Kind::Unit;
    double alpha_ = 0.0;
    double sigma_ = 1.0;
    std::vector<double> coeffs_, freqs_;
};

enum class PhiRoute { Abel, Spectral };
std::string to_string(PhiRoute r);

struct PhiValue {
    double value = 0.0;
    PhiRoute route = PhiRoute::Abel;
    double error = 0.0;          // estimated absolute error, >= 0
    bool tau_floored = false;    // |tau| was raised to the floor
};

inline constexpr double kTauFloor = 1e-6;

double h_transform(double t, double tau, const SpectralWindow& w, const Precision& prec = {});

// (1 / 2 pi) int h_unit(t) cos(r t) dt in closed form
double fourier_kernel(double r, double tau, double alpha);

// Q(P; tau) and dQ/dP; need P >= |tau|
double Q_eval(double P, double tau, const SpectralWindow& w);
double Q_P(double P, double tau, const SpectralWindow& w);

// bound on (2 sqrt2 / pi) int_W^inf |Q_P(w^2 + P; tau)| dw, uniform in |tau| <= P
double abel_tail_bound(double P, double W, const SpectralWindow& w);
// bound on |Phi(P, tau)| for every |tau| <= P
double phi_envelope(double P, const SpectralWindow& w);
// bound on |Phi| over the shell lo <= P <= hi
double phi_envelope_sup(double lo, double hi, const SpectralWindow& w);

PhiValue phi_abel(double P, double tau, const SpectralWindow& w, const Precision& prec = {});
PhiValue phi_spectral(double P, double tau, const SpectralWindow& w, const Precision& prec = {});

// 4 pi int_0^inf k(u; tau) Xi_t(u) du with k built from phi_abel; should give back h_transform
double selberg_forward(const SpectralWindow& w, double tau, double t, const Precision& prec = {});
std::vector<double> selberg_forward(const SpectralWindow& w, double tau, std::span<const double> ts,
                                    const Precision& prec = {});

struct PdeResult {
    double residual = 0.0;  // -Delta Phi + 4 pi^2 tau Phi
    double scale = 0.0;     // |Delta Phi| + 4 pi^2 |tau Phi|
    double phi = 0.0;
    double P = 0.0;
    double tau = 0.0;
};

// coords = (a, b, c, d); central differences at `step`, Richardson-refined when asked
PdeResult pde_residual(const std::array<double, 4>& coords, const SpectralWindow& w, double step,
                       bool richardson = true);

}  // namespace qtheta
