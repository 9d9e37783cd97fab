#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtheta/algebra.hpp"
#include "qtheta/specfun.hpp"
#include "qtheta/testfn.hpp"

namespace qtheta {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flat INI with sections; every key is optional and falls back to the defaults below.
//
//   [lattice]   N, ell, g_x, g_y, g_theta
//   [window]    kind = unit | long | cosine | gaussian, alpha, T, sigma, coeffs, freqs
//   [precision] rel_tol, working_digits, abs_floor
//   [grid]      n_max, Ls, deltas, hearts
//   [theta]     x, y, tol, p_cut
//   [run]       jobs, max_candidates, out_dir, format = csv | json | both
struct RunConfig {
    struct Lattice {
        std::int64_t N = 1;
        std::int64_t ell = 1;
        double g_x = 0.0, g_y = 1.0, g_theta = 0.0;
        bool operator==(const Lattice&) const = default;
    } lattice;

    struct Window {
        std::string kind = "unit";
        double alpha = 0.0;
        double T = 3.0;
        double sigma = 2.0;
        std::vector<double> coeffs, freqs;
        bool operator==(const Window&) const = default;
    } window;

    struct Prec {
        double rel_tol = 1e-12;
        int working_digits = 30;
        double abs_floor = 1e-30;
        bool operator==(const Prec&) const = default;
    } precision;

    struct Grid {
        std::int64_t n_max = 15;
        std::vector<double> Ls, deltas, hearts;  // empty: the command's default grid
        bool operator==(const Grid&) const = default;
    } grid;

    struct Theta {
        double x = 0.0, y = 1.0;
        double tol = 1e-10;
        double p_cut = 4.0;
        bool operator==(const Theta&) const = default;
    } theta;

    struct Run {
        int jobs = 1;
        std::uint64_t max_candidates = 400'000'000;
        std::string out_dir;  // empty: $QTHETA_OUT_DIR, then the working directory
        std::string format = "both";
        bool operator==(const Run&) const = default;
    } run;

    bool operator==(const RunConfig&) const = default;

    void validate() const;  // throws ConfigError

    LatticeSpec lattice_spec() const;
    SpectralWindow spectral_window() const;
    Precision phi_precision() const;
    std::filesystem::path output_dir() const;
};

RunConfig parse_config(const std::string& text);  // throws ConfigError
RunConfig load_config(const std::filesystem::path& path);
std::string to_ini(const RunConfig& cfg);

}  // namespace qtheta
