#include "dual.hpp"

#include <algorithm>

namespace dyadnet {

int rho_weight(const BitVector& v, int s, int m) {
    require(v.size() == static_cast<std::size_t>(s) * m, errc::invalid_argument,
            "rho_weight: vector length is not s*m");
    int total = 0;
    for (int i = 0; i < s; ++i) {
        int r = 0;
        for (int j = m; j >= 1; --j) {
            if (v.test(static_cast<std::size_t>(i) * m + j - 1)) {
                r = j;
                break;
            }
        }
        total += r;
    }
    return total;
}

int rho_weight(const std::vector<uint64_t>& masks, int m) {
    int total = 0;
    for (uint64_t w : masks) total += rho_coord(w, m);
    return total;
}

DualSpace DualSpace::from_matrices(const GeneratingMatrixSet& g) {
    g.validate();
    DualSpace d;
    d.s_ = g.s;
    d.m_ = g.m;
    // v is dual iff sum_i (C^(i))^T v_i = 0: stack the transposes side by side.
    d.map_ = BitMatrix(g.m, static_cast<std::size_t>(g.s) * g.m);
    for (int i = 0; i < g.s; ++i)
        for (int r = 0; r < g.m; ++r)
            for (int c = 0; c < g.m; ++c)
                if (g.mats[i].entry(r, c))
                    d.map_.set(c, static_cast<std::size_t>(i) * g.m + r, true);
    d.basis_ = kernel_basis(d.map_);
    d.basis_masks_.reserve(d.basis_.size());
    for (const BitVector& v : d.basis_) d.basis_masks_.push_back(d.masks_of(v));
    return d;
}

uint64_t DualSpace::size() const {
    require(dim() < 64, errc::cap_exceeded, "dual size does not fit in 64 bits");
    return uint64_t(1) << dim();
}

std::vector<uint64_t> DualSpace::masks_of(const BitVector& v) const {
    require(v.size() == static_cast<std::size_t>(s_) * m_, errc::invalid_argument,
            "dual vector length is not s*m");
    std::vector<uint64_t> masks(s_, 0);
    for (int i = 0; i < s_; ++i)
        for (int j = 1; j <= m_; ++j)
            if (v.test(static_cast<std::size_t>(i) * m_ + j - 1))
                masks[i] |= uint64_t(1) << (m_ - j);
    return masks;
}

BitVector DualSpace::vector_of(const std::vector<uint64_t>& masks) const {
    require(static_cast<int>(masks.size()) == s_, errc::invalid_argument,
            "mask count is not s");
    BitVector v(static_cast<std::size_t>(s_) * m_);
    for (int i = 0; i < s_; ++i)
        for (int j = 1; j <= m_; ++j)
            if ((masks[i] >> (m_ - j)) & 1u) v.set(static_cast<std::size_t>(i) * m_ + j - 1, true);
    return v;
}

bool DualSpace::contains(const BitVector& v) const {
    return mat_vec_mul(map_, v).is_zero();
}

bool DualSpace::contains_masks(const std::vector<uint64_t>& masks) const {
    return contains(vector_of(masks));
}

void DualSpace::enumerate(const std::function<void(const std::vector<uint64_t>&)>& visit) const {
    require(dim() <= kDualEnumCap, errc::cap_exceeded,
            "dual dimension exceeds the enumeration cap");
    std::vector<uint64_t> cur(s_, 0);
    visit(cur);
    const uint64_t total = uint64_t(1) << dim();
    for (uint64_t g = 1; g < total; ++g) {
        int bit = __builtin_ctzll(g); // Gray-code step
        for (int i = 0; i < s_; ++i) cur[i] ^= basis_masks_[bit][i];
        visit(cur);
    }
}

DualSpace::MinWeight DualSpace::min_weight(uint64_t layer_budget) const {
    if (dim() == 0) return MinWeight{0, true};
    if (dim() <= kDualEnumCap) {
        int best = std::numeric_limits<int>::max();
        bool seen = false;
        enumerate([&](const std::vector<uint64_t>& masks) {
            int w = rho_weight(masks, m_);
            if (w == 0) return; // zero vector
            seen = true;
            best = std::min(best, w);
        });
        if (!seen) return MinWeight{0, true};
        return MinWeight{best, false};
    }

    // Layered search: enumerate all vectors of rho weight exactly w, ascending.
    uint64_t spent = 0;
    std::vector<uint64_t> masks(s_, 0);
    for (int w = 1; w <= s_ * m_; ++w) {
        bool found = false;
        // Walk compositions (r_1..r_s) of w with 0 <= r_i <= m, then the free
        // digits below each leading digit.
        std::vector<int> r(s_, 0);
        std::function<bool(int, int)> comp = [&](int i, int rem) -> bool {
            if (i == s_ - 1) {
                if (rem > m_) return false;
                r[i] = rem;
                // enumerate candidates for this composition
                std::function<bool(int)> fill = [&](int ci) -> bool {
                    if (ci == s_) {
                        if (++spent > layer_budget)
                            fail(errc::cap_exceeded, "min_weight layer search budget exceeded");
                        return contains_masks(masks);
                    }
                    if (r[ci] == 0) {
                        masks[ci] = 0;
                        return fill(ci + 1);
                    }
                    uint64_t lead = uint64_t(1) << (m_ - r[ci]);
                    uint64_t free_cnt = uint64_t(1) << (r[ci] - 1);
                    for (uint64_t f = 0; f < free_cnt; ++f) {
                        // free digits 1..r_i-1 occupy bits above the leading digit
                        masks[ci] = lead | (f << (m_ - r[ci] + 1));
                        if (fill(ci + 1)) return true;
                    }
                    return false;
                };
                return fill(0);
            }
            for (int v = 0; v <= std::min(rem, m_); ++v) {
                r[i] = v;
                if (comp(i + 1, rem - v)) return true;
            }
            return false;
        };
        found = comp(0, w);
        if (found) return MinWeight{w, false};
    }
    return MinWeight{0, true};
}

std::vector<uint64_t> DualSpace::weight_histogram() const {
    std::vector<uint64_t> hist(static_cast<std::size_t>(s_) * m_ + 1, 0);
    enumerate([&](const std::vector<uint64_t>& masks) { ++hist[rho_weight(masks, m_)]; });
    return hist;
}

uint64_t DualSpace::count_leq(const std::vector<int>& a) const {
    require(static_cast<int>(a.size()) == s_, errc::invalid_argument,
            "count_leq: index vector length is not s");
    uint64_t count = 0;
    enumerate([&](const std::vector<uint64_t>& masks) {
        for (int i = 0; i < s_; ++i)
            if (rho_coord(masks[i], m_) > a[i]) return;
        ++count;
    });
    return count;
}

int64_t character_sum(const DigitalNet& p, const std::vector<uint64_t>& masks) {
    require(static_cast<int>(masks.size()) == p.s(), errc::invalid_argument,
            "character_sum: mask count is not s");
    int64_t sum = 0;
    const std::size_t n_points = p.size();
    for (std::size_t n = 0; n < n_points; ++n) {
        uint64_t acc = 0;
        for (int i = 0; i < p.s(); ++i) acc ^= masks[i] & p.num(n, i);
        sum += __builtin_parityll(acc) ? -1 : 1;
    }
    return sum;
}

int64_t character_sum(const DigitalNet& p, const BitVector& v) {
    require(v.size() == static_cast<std::size_t>(p.s()) * p.m(), errc::invalid_argument,
            "character_sum: vector length is not s*m");
    std::vector<uint64_t> masks(p.s(), 0);
    for (int i = 0; i < p.s(); ++i)
        for (int j = 1; j <= p.m(); ++j)
            if (v.test(static_cast<std::size_t>(i) * p.m() + j - 1))
                masks[i] |= uint64_t(1) << (p.m() - j);
    return character_sum(p, masks);
}

TParameter t_parameter_dual_weight(const GeneratingMatrixSet& g) {
    DualSpace d = DualSpace::from_matrices(g);
    DualSpace::MinWeight w = d.min_weight();
    int t = w.infinite ? 0 : std::max(0, g.m - w.weight + 1);
    return TParameter{t, TParameter::Method::dual_weight};
}

namespace {

// True iff for every composition d_1+...+d_s = d the union of the first d_i
// rows of each matrix is linearly independent.
bool all_compositions_independent(const GeneratingMatrixSet& g, int d) {
    std::vector<int> parts(g.s, 0);
    std::vector<BitVector> rows;
    std::function<bool(int, int)> rec = [&](int i, int rem) -> bool {
        if (i == g.s - 1) {
            if (rem > g.m) return true; // no such composition
            parts[i] = rem;
            rows.clear();
            for (int c = 0; c < g.s; ++c)
                for (int r = 0; r < parts[c]; ++r) rows.push_back(g.mats[c].row(r));
            BitMatrix stacked(rows.size(), g.m);
            for (std::size_t r = 0; r < rows.size(); ++r) stacked.set_row(r, rows[r]);
            return rank(stacked) == rows.size();
        }
        for (int v = 0; v <= std::min(rem, g.m); ++v) {
            parts[i] = v;
            if (!rec(i + 1, rem - v)) return false;
        }
        return true;
    };
    return rec(0, d);
}

} // namespace

TParameter t_parameter_rank_composition(const GeneratingMatrixSet& g) {
    g.validate();
    for (int d = g.m; d >= 1; --d)
        if (all_compositions_independent(g, d))
            return TParameter{g.m - d, TParameter::Method::rank_composition};
    return TParameter{g.m, TParameter::Method::rank_composition};
}

TParameter t_parameter_counting(const DigitalNet& p) {
    const int m = p.m();
    const int s = p.s();
    const std::size_t n_points = p.size();
    require(n_points == (uint64_t(1) << m), errc::invalid_argument,
            "t_parameter_counting: net must have exactly 2^m points");
    // Work estimate: shapes(q,s) * 2^m point passes for each candidate t.
    double shapes_total = 1;
    for (int i = 1; i < s; ++i) shapes_total *= (m + i);
    require(static_cast<double>(n_points) * shapes_total * (m + 1) < 5e8, errc::cap_exceeded,
            "t_parameter_counting: instance too large for the exhaustive check");

    for (int t = 0; t <= m; ++t) {
        const int q = m - t; // box shapes have digit depths summing to q
        const uint64_t expect = uint64_t(1) << t;
        bool ok = true;
        std::vector<int> shape(s, 0);
        std::vector<uint32_t> counts;
        std::function<bool(int, int)> shapes = [&](int i, int rem) -> bool {
            if (i == s - 1) {
                if (rem > m) return true;
                shape[i] = rem;
                counts.assign(uint64_t(1) << q, 0);
                for (std::size_t n = 0; n < n_points; ++n) {
                    uint64_t key = 0;
                    for (int c = 0; c < s; ++c)
                        key = (key << shape[c]) | (p.num(n, c) >> (m - shape[c]));
                    ++counts[key];
                }
                for (uint32_t c : counts)
                    if (c != expect) return false;
                return true;
            }
            for (int v = 0; v <= std::min(rem, m); ++v) {
                shape[i] = v;
                if (!shapes(i + 1, rem - v)) return false;
            }
            return true;
        };
        ok = shapes(0, q);
        if (ok) return TParameter{t, TParameter::Method::direct_counting};
    }
    return TParameter{m, TParameter::Method::direct_counting};
}

} // namespace dyadnet
