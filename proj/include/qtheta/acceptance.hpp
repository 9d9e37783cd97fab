#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace qtheta {

inline constexpr int kCriterionCount = 12;

struct AcceptanceOptions {
    bool fast = false;  // smaller N range for the sweep criteria
    int jobs = 1;
    std::filesystem::path out_dir;  // reports of the sweep criteria; empty: none written
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

std::string criterion_name(int id);
// never throws for a valid id; computation failures become a failed result
CriterionResult run_criterion(int id, const AcceptanceOptions& opts);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::span<const int> ids = {});
std::string format_result(const CriterionResult& r);  // "[PASS] 3 selberg round trip (...) 0.7s"

struct FittedConstants {
    double omega = 0, psi = 0, tracefree = 0, heart = 0, upper = 0;
    double emptiness = 0, tracefree_lambda1 = 0;
    double bessel = 0, xi = 0;
    double q_decay = 0, phi_decay = 0;
};

// sweeps behind every frozen constant (fitting range N <= 6); slow
FittedConstants fit_constants(int jobs);
std::string frozen_constants_header(const FittedConstants& c);

// sweep maxima for the decay constants: |Q| (1+P)^6 and |Phi| (1+P)^6
struct DecaySweep {
    double q_max = 0.0;
    double phi_max = 0.0;
};
DecaySweep decay_sweep();

}  // namespace qtheta
