#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qtheta {

struct Precision {
    double rel_tol = 1e-12;
    int working_digits = 30;  // decimal digits of the extended-precision path
    double abs_floor = 1e-30;  // accuracy is relative to max(|value|, abs_floor)

    void validate() const;  // throws std::invalid_argument
};

class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// K_{it}(x) for real t and x > 0; the value is real. The scaled variant returns
// e^{pi |t| / 2} K_{it}(x), which stays O(1) for large |t|.
//
// Accuracy is relative to the envelope of the function, not to the value itself:
// K_{it}(x) has real zeros in t once |t| > x. On 1/2 <= x <= 2, |t| <= 10 the
// series and cosh-integral paths are both evaluated and must agree.
double bessel_K_imag(double t, double x, const Precision& prec = {});
double bessel_K_imag_scaled(double t, double x, const Precision& prec = {});

// the two internal routes, exposed for cross-checks
double bessel_K_scaled_series(double t, double x, int digits);
double bessel_K_scaled_cosh(double t, double x, int digits);

// Xi_{1/2+it}(u) = P_{-1/2+it}(2u+1)
double spherical_Xi(double t, double u, const Precision& prec = {});

enum class XiRoute { Series, Mehler, LargeArgument };
std::string to_string(XiRoute r);
double spherical_Xi_route(double t, double u, XiRoute route, int digits);

// normalized upper incomplete gamma for s in {1, 2, 3}
double incomplete_gamma_Q(int s, double x);

struct AppendixGrid {
    std::vector<double> bessel_t{0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0};
    std::vector<double> bessel_x{0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
    std::vector<double> xi_t{0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
    std::vector<double> xi_u{0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0, 1000.0};
};

struct EnvelopeMax {
    double ratio = 0.0;  // max |derivative| / envelope
    double at_t = 0.0;
    double at_arg = 0.0;  // x or u
};

struct AppendixReport {
    EnvelopeMax bessel[3];  // j = 0, 1, 2 derivatives in x
    EnvelopeMax xi[3];      // j = 0, 1, 2 derivatives in u
    bool envelopes_positive = true;
    double bessel_max() const;
    double xi_max() const;
};

// envelopes: (1+|log x|)((1+|t|)/x)^j e^{-pi|t|/2} for K, and for Xi
// 1 | log(u) u^-1/2, (1+t^2)(1 | log(u) u^-3/2), (1+t^2)(u^-1 | log(u) u^-5/2)
// split at u = 2
double bessel_envelope(int j, double t, double x);
double xi_envelope(int j, double t, double u);

AppendixReport verify_appendix_bounds(const AppendixGrid& grid = {});

}  // namespace qtheta
