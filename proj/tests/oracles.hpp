#pragma once

// Independent reference computations used only by tests. Everything here
// deliberately avoids the library's own code paths for the quantity it
// checks: brute-force enumeration, quadrature, series expansions and plain
// Monte Carlo against which the exact implementations are frozen.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracles {

// ---- numeric quadrature (adaptive Simpson) --------------------------------

inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fb, double fm, double eps, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, fm, flm, eps / 2.0, depth - 1) +
           simpson_rec(f, m, b, fm, fb, frm, eps / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-13) {
    double m = 0.5 * (a + b);
    return simpson_rec(f, a, b, f(a), f(b), f(m), eps, 48);
}

// E|N(0,1)|^p by quadrature of the defining integral (doubled half-line).
inline double chi_p_quadrature(double p) {
    auto f = [p](double u) { return std::pow(u, p) * std::exp(-0.5 * u * u); };
    double tail = 40.0; // integrand is below 1e-300 beyond this
    return 2.0 / std::sqrt(2.0 * M_PI) * integrate(f, 0.0, tail, 1e-14);
}

// Standard normal CDF via the series / continued-fraction pair, independent
// of erfc.
inline double normal_cdf_reference(double x) {
    double ax = std::abs(x);
    double phi = std::exp(-0.5 * ax * ax) / std::sqrt(2.0 * M_PI);
    double tail;
    if (ax < 8.0) {
        // lower-tail series for P(0 < N < ax)
        double sum = 0.0, term = ax;
        for (int k = 0; k < 400; ++k) {
            sum += term;
            term *= ax * ax / (2.0 * k + 3.0);
            if (term < 1e-18 * sum) break;
        }
        double centered = phi * sum; // P(0 < N < ax)
        tail = 0.5 - centered;
    } else {
        // continued fraction for the Mills ratio
        double cf = 0.0;
        for (int k = 120; k >= 1; --k) cf = k / (ax + cf);
        tail = phi / (ax + cf);
    }
    return x >= 0.0 ? 1.0 - tail : tail;
}

// ---- exhaustive one-dimensional moment of the local discrepancy ----------
//
// For an s = 1 net of N = 2^m points, E_Y |D(P + T, Y)|^p has a closed form
// on each dyadic cell: with c_k points strictly below the cell's right end,
// D = c_k - N y on y in [k/N, (k+1)/N). Summing the cell integrals and then
// averaging over all N shifts T gives M_{1,p}^p exactly.
inline double m1p_exhaustive(const std::vector<uint64_t>& nums, int m, double p) {
    const uint64_t n_cells = uint64_t(1) << m;
    const double n = static_cast<double>(n_cells);
    auto cell_integral = [&](double c, double a, double b) {
        // integral over [a,b] of |c - N y|^p dy
        auto prim = [&](double u) { // antiderivative of |u|^p in u
            return (u >= 0 ? 1.0 : -1.0) * std::pow(std::abs(u), p + 1.0) / (p + 1.0);
        };
        return (prim(c - n * a) - prim(c - n * b)) / n;
    };
    double shift_acc = 0.0;
    for (uint64_t t = 0; t < n_cells; ++t) {
        std::vector<uint64_t> shifted(nums);
        for (uint64_t& x : shifted) x ^= t;
        double acc = 0.0;
        for (uint64_t k = 0; k < n_cells; ++k) {
            double a = static_cast<double>(k) / n;
            double b = static_cast<double>(k + 1) / n;
            uint64_t count = 0; // points with value < anything in the cell interior
            for (uint64_t x : shifted) count += x <= k;
            acc += cell_integral(static_cast<double>(count), a, b);
        }
        shift_acc += acc;
    }
    return shift_acc / n;
}

// ---- Monte Carlo \int D(P,Y)^2 dY -----------------------------------------

struct McEstimate {
    double mean = 0;
    double std_error = 0;
};

inline McEstimate mc_l2_sq(const std::vector<std::vector<double>>& points, int s, uint64_t n_mc,
                           uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double sum = 0.0, sumsq = 0.0;
    for (uint64_t i = 0; i < n_mc; ++i) {
        std::vector<double> y(s);
        double vol = 1.0;
        for (int c = 0; c < s; ++c) {
            y[c] = unif(rng);
            vol *= y[c];
        }
        double count = 0;
        for (const auto& pt : points) {
            bool in = true;
            for (int c = 0; c < s && in; ++c) in = pt[c] < y[c];
            count += in;
        }
        double d = count - static_cast<double>(points.size()) * vol;
        sum += d * d;
        sumsq += d * d * d * d;
    }
    double mean = sum / static_cast<double>(n_mc);
    double var = sumsq / static_cast<double>(n_mc) - mean * mean;
    return McEstimate{mean, std::sqrt(std::max(0.0, var) / static_cast<double>(n_mc))};
}

// Gaussian sampler on a fixed-seed engine (Box-Muller), for harness
// self-tests.
inline std::vector<double> gaussian_sample(uint64_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> out(n);
    for (double& v : out) v = normal(rng);
    return out;
}

} // namespace oracles
