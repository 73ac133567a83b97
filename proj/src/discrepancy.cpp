#include "discrepancy.hpp"

#include <algorithm>

namespace dyadnet {

bool next_index(std::vector<int>& a, int m) {
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] < m) {
            ++a[i];
            std::fill(a.begin() + i + 1, a.end(), 0);
            return true;
        }
    }
    return false;
}

double local_discrepancy(const DigitalNet& p, std::span<const double> y) {
    require(static_cast<int>(y.size()) == p.s(), errc::invalid_argument,
            "local_discrepancy: point dimension mismatch");
    const int m = p.m();
    std::vector<uint64_t> thr(y.size());
    double vol = 1.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        require(y[i] > 0.0 && y[i] <= 1.0, errc::invalid_argument,
                "local_discrepancy: y outside (0,1]");
        // x < y iff num < ceil(y * 2^m); ldexp is exact, so the threshold is too.
        thr[i] = static_cast<uint64_t>(std::ceil(std::ldexp(y[i], m)));
        vol *= y[i];
    }
    uint64_t count = 0;
    const std::size_t n_points = p.size();
    for (std::size_t n = 0; n < n_points; ++n) {
        bool in = true;
        for (int i = 0; i < p.s() && in; ++i) in = p.num(n, i) < thr[i];
        count += in;
    }
    return static_cast<double>(count) - static_cast<double>(n_points) * vol;
}

uint64_t count_below(const DigitalNet& p, std::span<const uint64_t> t_masks,
                     std::span<const uint64_t> y_frac) {
    const int s = p.s();
    const int m = p.m();
    require(static_cast<int>(t_masks.size()) == s && static_cast<int>(y_frac.size()) == s,
            errc::invalid_argument, "count_below: dimension mismatch");
    const int up = 64 - m;
    uint64_t count = 0;
    const std::size_t n_points = p.size();
    if (s == 2 && m > 0) { // hot path for the experiments
        const uint64_t t0 = t_masks[0], t1 = t_masks[1];
        const uint64_t y0 = y_frac[0], y1 = y_frac[1];
        const uint64_t* c = p.raw().data();
        for (std::size_t n = 0; n < n_points; ++n) {
            uint64_t a = (c[2 * n] ^ t0) << up;
            uint64_t b = (c[2 * n + 1] ^ t1) << up;
            count += (a < y0) & (b < y1);
        }
        return count;
    }
    for (std::size_t n = 0; n < n_points; ++n) {
        bool in = true;
        for (int i = 0; i < s && in; ++i) {
            uint64_t w = (p.num(n, i) ^ t_masks[i]);
            uint64_t scaled = m ? (w << up) : 0;
            in = scaled < y_frac[i];
        }
        count += in;
    }
    return count;
}

double local_discrepancy_shifted(const DigitalNet& p, std::span<const uint64_t> t_masks,
                                 std::span<const uint64_t> y_frac) {
    double vol = 1.0;
    for (uint64_t f : y_frac) vol *= std::ldexp(static_cast<double>(f), -64);
    return static_cast<double>(count_below(p, t_masks, y_frac)) -
           static_cast<double>(p.size()) * vol;
}

double l2_discrepancy_sq(const DigitalNet& p) {
    const std::size_t n_points = p.size();
    const int s = p.s();
    if (n_points == 0) return 0.0;
    std::vector<double> x(n_points * s);
    for (std::size_t n = 0; n < n_points; ++n)
        for (int i = 0; i < s; ++i) x[n * s + i] = p.coord(n, i);

    double pair_sum = 0.0;
    for (std::size_t n = 0; n < n_points; ++n) {
        double diag = 1.0;
        for (int i = 0; i < s; ++i) diag *= 1.0 - x[n * s + i];
        pair_sum += diag;
        for (std::size_t q = n + 1; q < n_points; ++q) {
            double prod = 1.0;
            for (int i = 0; i < s; ++i) prod *= 1.0 - std::max(x[n * s + i], x[q * s + i]);
            pair_sum += 2.0 * prod;
        }
    }
    double single_sum = 0.0;
    for (std::size_t n = 0; n < n_points; ++n) {
        double prod = 1.0;
        for (int i = 0; i < s; ++i) prod *= 1.0 - x[n * s + i] * x[n * s + i];
        single_sum += prod;
    }
    const double nn = static_cast<double>(n_points);
    return pair_sum - std::ldexp(nn, 1 - s) * single_sum + nn * nn * std::pow(3.0, -s);
}

int rademacher(const IndexVector& a, std::span<const uint64_t> y_frac) {
    require(a.a.size() == y_frac.size(), errc::invalid_argument,
            "rademacher: dimension mismatch");
    int ones = 0;
    for (std::size_t i = 0; i < y_frac.size(); ++i)
        if (a.a[i] >= 1) ones ^= frac_digit(y_frac[i], a.a[i]);
    return ones ? -1 : 1;
}

double MicroLocal::value() const {
    return static_cast<double>(points_in_box) - std::ldexp(1.0, m - a0);
}

MicroLocal micro_local_discrepancy(const DigitalNet& p, const IndexVector& a,
                                   std::span<const uint64_t> z_masks) {
    const int s = p.s();
    const int m = p.m();
    require(static_cast<int>(a.a.size()) == s && static_cast<int>(z_masks.size()) == s,
            errc::invalid_argument, "micro_local: dimension mismatch");
    for (int v : a.a)
        require(v >= 0 && v <= m, errc::invalid_argument, "micro_local: index entry outside [0,m]");

    int64_t count = 0;
    const std::size_t n_points = p.size();
    for (std::size_t n = 0; n < n_points; ++n) {
        bool in = true;
        for (int i = 0; i < s && in; ++i) {
            if (a.a[i] == 0) continue; // Pi_0 is the whole axis
            uint64_t w = p.num(n, i) ^ z_masks[i];
            in = (w >> (m - a.a[i])) == 1; // leading digit exactly at a_i
        }
        count += in;
    }
    return MicroLocal{count, a.a0(), m};
}

double LambdaDual::value() const { return std::ldexp(static_cast<double>(signed_sum), m - a0); }

LambdaDual lambda_via_dual(const DualSpace& d, const IndexVector& a,
                           std::span<const uint64_t> z_masks) {
    const int s = d.s();
    const int m = d.m();
    require(static_cast<int>(a.a.size()) == s && static_cast<int>(z_masks.size()) == s,
            errc::invalid_argument, "lambda_via_dual: dimension mismatch");
    for (int v : a.a)
        require(v >= 0 && v <= m, errc::invalid_argument,
                "lambda_via_dual: index entry outside [0,m]");

    int64_t sum = 0;
    d.enumerate([&](const std::vector<uint64_t>& masks) {
        bool zero = true;
        for (int i = 0; i < s; ++i)
            if (masks[i]) zero = false;
        if (zero) return;
        int ones = 0;
        for (int i = 0; i < s; ++i) {
            if (rho_coord(masks[i], m) > a.a[i]) return;
            ones ^= __builtin_parityll(masks[i] & z_masks[i]);
            if (a.a[i] >= 1) ones ^= int((masks[i] >> (m - a.a[i])) & 1u); // digit a_i of m_i
        }
        sum += ones ? -1 : 1;
    });
    return LambdaDual{sum, a.a0(), m};
}

BoxCountTable::BoxCountTable(const DigitalNet& p, std::span<const uint64_t> shift_masks)
    : s_(p.s()), m_(p.m()) {
    require(static_cast<int>(shift_masks.size()) == s_, errc::invalid_argument,
            "BoxCountTable: shift dimension mismatch");
    double table_size = 1;
    for (int i = 0; i < s_; ++i) table_size *= m_ + 1;
    require(table_size <= double(1 << 24), errc::cap_exceeded,
            "BoxCountTable: (m+1)^s too large");
    cells_.assign(static_cast<std::size_t>(table_size), 0);

    std::vector<std::size_t> stride(s_);
    std::size_t st = 1;
    for (int i = s_ - 1; i >= 0; --i) {
        stride[i] = st;
        st *= m_ + 1;
    }
    const std::size_t n_points = p.size();
    for (std::size_t n = 0; n < n_points; ++n) {
        std::size_t idx = 0;
        for (int i = 0; i < s_; ++i) {
            uint64_t w = p.num(n, i) ^ shift_masks[i];
            int lead = w ? m_ - (63 - __builtin_clzll(w)) : 0; // first nonzero digit index
            idx += static_cast<std::size_t>(lead) * stride[i];
        }
        ++cells_[idx];
    }
    // Fold totals into slot 0 of each dimension so index 0 acts as a wildcard.
    for (int dim = 0; dim < s_; ++dim) {
        const std::size_t sd = stride[dim];
        for (std::size_t base = 0; base < cells_.size(); ++base) {
            if ((base / sd) % (m_ + 1) != 0) continue;
            int64_t total = cells_[base];
            for (int v = 1; v <= m_; ++v) total += cells_[base + v * sd];
            cells_[base] = total;
        }
    }
}

int64_t BoxCountTable::count(const std::vector<int>& a) const {
    require(static_cast<int>(a.size()) == s_, errc::invalid_argument,
            "BoxCountTable: index vector length mismatch");
    std::size_t idx = 0;
    for (int i = 0; i < s_; ++i) {
        require(a[i] >= 0 && a[i] <= m_, errc::invalid_argument,
                "BoxCountTable: index entry outside [0,m]");
        idx = idx * (m_ + 1) + static_cast<std::size_t>(a[i]);
    }
    return cells_[idx];
}

namespace {

std::vector<uint64_t> combined_shift(const DigitalNet& p, const ShiftVector& t,
                                     std::span<const uint64_t> y_frac) {
    require(t.s == p.s() && t.m == p.m(), errc::invalid_argument,
            "shift dimension or depth mismatch");
    require(static_cast<int>(y_frac.size()) == p.s(), errc::invalid_argument,
            "point dimension mismatch");
    std::vector<uint64_t> z(p.s());
    for (int i = 0; i < p.s(); ++i)
        z[i] = t.digits[i] ^ (p.m() ? (y_frac[i] >> (64 - p.m())) : 0);
    return z;
}

} // namespace

DmDecomposition dm_decomposition(const DigitalNet& p, const ShiftVector& t,
                                 std::span<const uint64_t> y_frac) {
    const int s = p.s();
    const int m = p.m();
    BoxCountTable table(p, combined_shift(p, t, y_frac));

    double acc = 0.0;
    IndexVector a{std::vector<int>(s, 0)};
    do {
        const int a0 = a.a0();
        double lambda = static_cast<double>(table.count(a.a)) - std::ldexp(1.0, m - a0);
        int sign = (a.kappa() % 2 ? -1 : 1) * rademacher(a, y_frac);
        acc += sign * lambda;
    } while (next_index(a.a, m));

    DmDecomposition out;
    out.dm = std::ldexp(acc, -s);
    out.d = local_discrepancy_shifted(p, t.digits, y_frac);
    out.residual = out.d - out.dm;
    return out;
}

double v0_of(int m) {
    require(m >= 1, errc::invalid_argument, "V0 requires m >= 1");
    return 10.0 * std::log2(static_cast<double>(m));
}

MartingaleDecomposition martingale_terms(const DigitalNet& p, const ShiftVector& t_shift,
                                         std::span<const uint64_t> y_frac, int t_param) {
    const int s = p.s();
    const int m = p.m();
    require(t_param >= 0 && t_param <= m, errc::invalid_argument,
            "martingale_terms: t outside [0,m]");
    BoxCountTable table(p, combined_shift(p, t_shift, y_frac));

    MartingaleDecomposition out;
    out.m = m;
    out.s = s;
    out.t = t_param;
    out.v0 = v0_of(m);
    out.dk.assign(m + 1, 0.0);
    out.family_sizes.assign(m + 1, 0);

    double dm_acc = 0.0;
    IndexVector a{std::vector<int>(s, 0)};
    do {
        const int a0 = a.a0();
        double lambda = static_cast<double>(table.count(a.a)) - std::ldexp(1.0, m - a0);
        int sign = (a.kappa() % 2 ? -1 : 1) * rademacher(a, y_frac);
        dm_acc += sign * lambda;
        if (a0 <= m - t_param) continue; // identically-zero boxes for a valid t
        double psi = std::ldexp(sign * lambda, -s);
        out.max_abs_psi = std::max(out.max_abs_psi, std::abs(psi));
        if (static_cast<double>(a0) < m + out.v0) {
            int k = a.max_entry();
            out.dk[k] += psi;
            ++out.family_sizes[k];
        } else {
            out.remainder += psi;
            ++out.remainder_size;
        }
    } while (next_index(a.a, m));
    out.dm = std::ldexp(dm_acc, -s);
    return out;
}

} // namespace dyadnet
