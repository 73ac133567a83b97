#pragma once

// Statistical harness: shift-averaged discrepancy moments, Gaussian
// reference constants, the normalized-discrepancy distribution experiment,
// moment-ratio scans, and the per-net identity verification suite.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "discrepancy.hpp"
#include "rng.hpp"

namespace dyadnet {

// p-th absolute moment of the standard Gaussian. Even integer p uses the
// double-factorial product exactly; otherwise 2^{p/2} Gamma((p+1)/2)/sqrt(pi).
double chi_p(double p);

// Standard normal CDF.
double std_normal_cdf(double w);

enum class MomentMethod { exact_enumeration, exact_warnock_shift_avg, monte_carlo };

const char* moment_method_name(MomentMethod m);

struct MomentEstimate {
    double p = 2.0;
    double value = 0.0;
    MomentMethod method = MomentMethod::monte_carlo;
    double std_error = 0.0; // 0 for exact methods
    uint64_t n_samples = 0;
    uint64_t seed = 0;
};

// Shift-averaged p-th moment of the local discrepancy.
//   exact_enumeration      p = 2 only; every shift in Q^s(2^m), exact L2 per
//                          shift; capped at s*m <= 16.
//   exact_warnock_shift_avg p = 2 only; sampled shifts, exact L2 per shift.
//   monte_carlo            any p > 0; sampled (T, Y) pairs.
MomentEstimate estimate_M_sp(const DigitalNet& p, double p_exp, MomentMethod method,
                             uint64_t n_samples, uint64_t seed, int threads = 1);

inline constexpr int kHistBins = 61;
inline constexpr double kHistLo = -6.0;
inline constexpr double kHistHi = 6.0;

struct CltReport {
    int s = 0, m = 0;
    int t = -1; // -1 when unknown
    uint64_t n = 0;
    uint64_t seed = 0;
    double ks = 0.0;
    std::array<double, 5> abs_moments{}; // index p = 1..4; slot 0 unused
    MomentEstimate normalizer;
    std::array<uint64_t, kHistBins> histogram{};
    uint64_t hist_clipped = 0; // samples outside the histogram range
};

// Draws n (T, Y) pairs, normalizes D(P + T, Y) by the supplied p = 2 moment,
// and reports the Kolmogorov-Smirnov distance to the standard normal CDF,
// absolute moments for p = 1..4 and a fixed-width histogram.
CltReport clt_experiment(const DigitalNet& p, uint64_t n_samples, uint64_t seed,
                         const MomentEstimate& normalizer, int threads = 1);

// Report assembly from already-normalized values; the sampling-free part of
// clt_experiment, exposed so the harness itself can be validated on synthetic
// Gaussian input.
CltReport build_clt_report(std::vector<double> z_values);

// One-sample KS distance against the standard normal; sorts in place.
double ks_distance_vs_normal(std::vector<double>& z);

struct MomentRatio {
    double p = 0.0;
    double m_value = 0.0;  // sampled M_{s,p}
    double m_stderr = 0.0;
    double ratio_raw = 0.0;        // M_p / M_2
    double ratio_pow = 0.0;        // (M_p / M_2)^p
    double ratio_pow_stderr = 0.0; // fixed-batch stderr of ratio_pow
    double chi = 0.0;              // Gaussian target for ratio_pow
};

struct MomentRatioReport {
    uint64_t n = 0;
    uint64_t seed = 0;
    double m2 = 0.0;
    std::vector<MomentRatio> ratios;
};

// Single sampling pass shared by all requested p (p = 2 always included).
MomentRatioReport moment_ratio_experiment(const DigitalNet& p, std::span<const double> ps,
                                          uint64_t n_samples, uint64_t seed, int threads = 1);

struct CheckResult {
    std::string name;   // which identity family the check exercises
    bool pass = true;
    std::string detail;
};

// Identity suite for one generating-matrix set: t-parameter agreement,
// character-sum dichotomy, constrained dual counts, main-part/residual
// bounds and the dual-vs-direct box identities, all at the claimed t
// (claimed_t = -1 derives the exact t first).
std::vector<CheckResult> verify_net(const GeneratingMatrixSet& g, int claimed_t, uint64_t seed);

} // namespace dyadnet
