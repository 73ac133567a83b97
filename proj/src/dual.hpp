#pragma once

// Dual space of a digital net: the vectors of GF(2)^{sm} orthogonal to the
// digit strings of every net point. Carries weight queries, the three
// t-parameter routes and exact character sums.
//
// Dual vectors appear in two layouts: as BitVector of length s*m (coordinate
// i major, digit j minor: position i*m + j - 1), and as s per-coordinate
// numerator masks aligned with DigitalNet numerators (bit m-j holds digit j).

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "net.hpp"

namespace dyadnet {

// Full dual enumeration is only allowed up to this dimension.
inline constexpr int kDualEnumCap = 24;

// Last nonzero digit index of one coordinate block (0 for the zero block).
inline int rho_coord(uint64_t mask, int m) {
    return mask ? m - __builtin_ctzll(mask) : 0;
}

// NRT-type weight: sum of last-nonzero-digit indices over coordinate blocks.
int rho_weight(const BitVector& v, int s, int m);
int rho_weight(const std::vector<uint64_t>& masks, int m);

class DualSpace {
public:
    static DualSpace from_matrices(const GeneratingMatrixSet& g);

    int s() const { return s_; }
    int m() const { return m_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    // log2 of the dual size; the size itself is 2^dim.
    uint64_t size() const;

    const std::vector<BitVector>& basis() const { return basis_; }
    const BitMatrix& defining_map() const { return map_; }

    bool contains(const BitVector& v) const;
    bool contains_masks(const std::vector<uint64_t>& masks) const;

    // Visits every dual element including zero, as coordinate masks, in a
    // fixed Gray-code order. Throws cap_exceeded above kDualEnumCap.
    void enumerate(const std::function<void(const std::vector<uint64_t>&)>& visit) const;

    // min over nonzero elements of the rho weight; nullopt-like sentinel
    // (reported via infinite=true) when the dual is trivial. Enumerates when
    // dim <= kDualEnumCap, otherwise searches ascending weight layers within
    // a candidate budget and throws cap_exceeded beyond it.
    struct MinWeight {
        int weight = 0;
        bool infinite = false;
    };
    MinWeight min_weight(uint64_t layer_budget = uint64_t(1) << 22) const;

    // Histogram of rho weights over the whole dual, index 0..s*m.
    std::vector<uint64_t> weight_histogram() const;

    // #{ m in dual : rho(m_i) <= a[i] for all i } (zero vector included).
    uint64_t count_leq(const std::vector<int>& a) const;

    std::vector<uint64_t> masks_of(const BitVector& v) const;
    BitVector vector_of(const std::vector<uint64_t>& masks) const;

private:
    int s_ = 0, m_ = 0;
    std::vector<BitVector> basis_;
    std::vector<std::vector<uint64_t>> basis_masks_;
    BitMatrix map_; // m x (s*m): v is dual iff map * v = 0
};

// Sum over net points of (-1)^{<v, digits of point>}; 2^m on dual elements
// and 0 elsewhere for exact digital nets.
int64_t character_sum(const DigitalNet& p, const BitVector& v);
int64_t character_sum(const DigitalNet& p, const std::vector<uint64_t>& masks);

struct TParameter {
    enum class Method { dual_weight, rank_composition, direct_counting };
    int value = 0;
    Method method = Method::dual_weight;
};

// Smallest exact t via the minimum dual weight: t = max(0, m - weight + 1).
TParameter t_parameter_dual_weight(const GeneratingMatrixSet& g);

// Smallest exact t via row-composition ranks: t = m - d*, where d* is the
// largest d such that for every composition d_1+...+d_s = d the first d_i
// rows of each matrix are jointly linearly independent.
TParameter t_parameter_rank_composition(const GeneratingMatrixSet& g);

// Smallest t passing the exhaustive elementary-interval count (Definition 2
// oracle). Only feasible for small instances; throws cap_exceeded otherwise.
TParameter t_parameter_counting(const DigitalNet& p);

} // namespace dyadnet
