#pragma once

// Discrepancy functionals and their dyadic harmonic decomposition: local
// discrepancy, the exact L2 closed form, Rademacher products, micro-local
// discrepancies over elementary boxes, the dual-space route to the same
// quantities, the main-part/remainder split of the local discrepancy, and
// the per-depth martingale terms with their exact conditional expectations.
//
// Y coordinates in sampling paths are 64-bit binary fractions (value =
// frac / 2^64). Digits beyond the net depth m only enter Rademacher factors
// and volume terms.

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dual.hpp"
#include "net.hpp"

namespace dyadnet {

struct IndexVector {
    std::vector<int> a;

    int a0() const {
        int t = 0;
        for (int v : a) t += v;
        return t;
    }
    int kappa() const {
        int t = 0;
        for (int v : a) t += v != 0;
        return t;
    }
    int max_entry() const {
        int t = 0;
        for (int v : a) t = v > t ? v : t;
        return t;
    }
};

// Odometer step through I_m^s = {0..m}^s, last coordinate fastest; start from
// all zeros, returns false after the all-m vector.
bool next_index(std::vector<int>& a, int m);

// Signed count D(P, Y) = #{n : x_n in [0,Y)} - N * y_1...y_s, 0 < y_i <= 1.
double local_discrepancy(const DigitalNet& p, std::span<const double> y);

// Number of points of P (xor-shifted by t_masks) inside [0, Y) for Y given as
// 64-bit fractions, plus the signed-count wrapper.
uint64_t count_below(const DigitalNet& p, std::span<const uint64_t> t_masks,
                     std::span<const uint64_t> y_frac);
double local_discrepancy_shifted(const DigitalNet& p, std::span<const uint64_t> t_masks,
                                 std::span<const uint64_t> y_frac);

// Exact integral of D(P, Y)^2 over the unit cube (Warnock formula).
double l2_discrepancy_sq(const DigitalNet& p);

// Product of one-dimensional Rademacher factors r_a(y) = 1 - 2 y_a, r_0 = 1.
// Returns +1 or -1.
int rademacher(const IndexVector& a, std::span<const uint64_t> y_frac);

// Single digit convention used by rademacher: digit a (1-based) of a 64-bit
// fraction.
inline int frac_digit(uint64_t frac, int a) { return (a >= 1 && a <= 64) ? int((frac >> (64 - a)) & 1u) : 0; }

struct MicroLocal {
    int64_t points_in_box = 0; // points of the shifted net inside Pi_A
    int a0 = 0;
    int m = 0;
    double value() const; // points_in_box - 2^{m-a0}
};

// Signed point mass of the box Pi_A = Pi_{a_1} x ... x Pi_{a_s} under the
// net shifted by z (m-digit coordinate masks).
MicroLocal micro_local_discrepancy(const DigitalNet& p, const IndexVector& a,
                                   std::span<const uint64_t> z_masks);

struct LambdaDual {
    int64_t signed_sum = 0; // sum of characters over the constrained dual
    int a0 = 0;
    int m = 0;
    double value() const; // 2^{m-a0} * signed_sum
};

// Same quantity through the dual space: 2^{m-a0} times the signed character
// sum over nonzero dual vectors with rho(m_i) <= a_i. Requires an enumerable
// dual.
LambdaDual lambda_via_dual(const DualSpace& d, const IndexVector& a,
                           std::span<const uint64_t> z_masks);

// Per-box point counts of a shifted net, bucketed by leading-one digit per
// coordinate and pre-marginalized so that count(A) answers in O(1) with
// a_i = 0 acting as a wildcard.
class BoxCountTable {
public:
    BoxCountTable(const DigitalNet& p, std::span<const uint64_t> shift_masks);

    int s() const { return s_; }
    int m() const { return m_; }
    int64_t count(const std::vector<int>& a) const;

private:
    int s_ = 0, m_ = 0;
    std::vector<int64_t> cells_; // (m+1)^s, coordinate-major strides
};

struct DmDecomposition {
    double dm = 0;       // truncated main part of Lemma-type representation
    double residual = 0; // local discrepancy minus the main part
    double d = 0;        // local discrepancy of the shifted net at Y
};

// Splits D(P + T, Y) into the alternating micro-local sum over all boxes of
// I_m^s and the residual.
DmDecomposition dm_decomposition(const DigitalNet& p, const ShiftVector& t,
                                 std::span<const uint64_t> y_frac);

double v0_of(int m); // 10 * log2(m)

struct MartingaleDecomposition {
    int m = 0, s = 0, t = 0;
    double v0 = 0;
    std::vector<double> dk;   // dk[k], k = 1..m (index 0 unused)
    double remainder = 0;     // boxes with a0 >= m + V0
    double dm = 0;            // full main part (all boxes, any a0)
    std::vector<uint64_t> family_sizes; // family_sizes[k], k = 1..m
    uint64_t remainder_size = 0;
    double max_abs_psi = 0;
};

// Groups the main-part terms by k = max_i a_i within the window
// a0 in (m - t, m + V0); everything at or beyond m + V0 lands in the
// remainder. For a valid t the groups and remainder sum exactly to dm.
MartingaleDecomposition martingale_terms(const DigitalNet& p, const ShiftVector& t_shift,
                                         std::span<const uint64_t> y_frac, int t_param);

// Exact average of f over all completions of digits k+1..m of both arguments,
// digits 1..k pinned from the prefixes. The completion count 2^{2s(m-k)} is
// capped at 2^20.
template <typename R, typename F>
R conditional_sum(F&& f, const ShiftVector& t_prefix, const ShiftVector& y_prefix, int k) {
    const int s = t_prefix.s;
    const int m = t_prefix.m;
    require(y_prefix.s == s && y_prefix.m == m, errc::invalid_argument,
            "conditional expectation: prefix shape mismatch");
    require(k >= 0 && k <= m, errc::invalid_argument, "conditional expectation: k out of range");
    const int free_bits = 2 * s * (m - k);
    require(free_bits <= 20, errc::cap_exceeded,
            "conditional expectation: too many free digits for exhaustive averaging");

    const uint64_t low = m > k ? ((uint64_t(1) << (m - k)) - 1) : 0;
    ShiftVector tc = t_prefix, yc = y_prefix;
    for (int i = 0; i < s; ++i) {
        tc.digits[i] &= ~low;
        yc.digits[i] &= ~low;
    }
    R acc{};
    const uint64_t total = uint64_t(1) << free_bits;
    for (uint64_t w = 0; w < total; ++w) {
        uint64_t bits = w;
        for (int i = 0; i < s; ++i) {
            tc.digits[i] = (tc.digits[i] & ~low) | (bits & low);
            bits >>= (m - k);
            yc.digits[i] = (yc.digits[i] & ~low) | (bits & low);
            bits >>= (m - k);
        }
        acc += f(static_cast<const ShiftVector&>(tc), static_cast<const ShiftVector&>(yc));
    }
    return acc;
}

template <typename F>
double conditional_expectation(F&& f, const ShiftVector& t_prefix, const ShiftVector& y_prefix,
                               int k) {
    const int free_bits = 2 * t_prefix.s * (t_prefix.m - k);
    double sum = conditional_sum<double>(std::forward<F>(f), t_prefix, y_prefix, k);
    return std::ldexp(sum, -free_bits);
}

} // namespace dyadnet
