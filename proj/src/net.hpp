#pragma once

// Dyadic digital nets: construction from GF(2) generating matrices, digital
// shifts, truncation, index extension and digital-sequence prefixes.
//
// Digit convention throughout: digit j = 1 is most significant (weight 2^-j).
// A coordinate with m digits is stored as a 64-bit numerator whose bit (m-j)
// holds digit j, so the real value is numerator / 2^m and coordinate-wise
// digital addition is plain XOR. m is capped at 62 so scaled comparisons
// against 64-bit fractions stay exact.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gf2.hpp"

namespace dyadnet {

inline constexpr int kMaxDigits = 62;

struct GeneratingMatrixSet {
    int s = 0; // dimension >= 1
    int m = 0; // digit depth >= 0
    std::vector<BitMatrix> mats; // s square m x m matrices

    void validate() const;
};

struct ShiftVector {
    int s = 0;
    int m = 0;
    std::vector<uint64_t> digits; // one numerator per coordinate

    static ShiftVector zero(int s, int m) { return ShiftVector{s, m, std::vector<uint64_t>(s, 0)}; }
};

class DigitalNet {
public:
    DigitalNet() = default;
    DigitalNet(int s, int m, std::vector<uint64_t> coords);

    int s() const { return s_; }
    int m() const { return m_; }
    std::size_t size() const { return s_ ? coords_.size() / s_ : 0; }

    // Exact numerator of coordinate i of point n: value = num / 2^m.
    uint64_t num(std::size_t n, int i) const { return coords_[n * s_ + i]; }
    double coord(std::size_t n, int i) const;
    // Digit j (1-based, most significant first) of coordinate i of point n.
    int digit(std::size_t n, int i, int j) const;

    const std::vector<uint64_t>& raw() const { return coords_; }

private:
    int s_ = 0, m_ = 0;
    std::vector<uint64_t> coords_; // point-major, then coordinate
};

// All 2^m points of the digital net defined by G (Definition 4 with identity
// bijections), in counter order n = 0..2^m-1.
DigitalNet generate_net(const GeneratingMatrixSet& g);

// Coordinate-wise XOR of every point with T. Involution; preserves order.
DigitalNet digital_shift(const DigitalNet& p, const ShiftVector& t);

// Keep the first m binary digits of y in [0,1); dyadic rationals use their
// finite expansion.
double truncate(double y, int m);

// New first coordinate n/2^m prepended to point n; dimension becomes s+1.
DigitalNet extend_with_index(const DigitalNet& p);

struct SequenceGenerator {
    int s = 0;
    int m_max = 0;
    std::string name;
    // Upper-left m x m block of the i-th infinite generating matrix, m <= m_max.
    // Blocks must be nested.
    std::function<BitMatrix(int i, int m)> block;

    GeneratingMatrixSet matrices(int m) const;
};

// Points x_{k 2^m} .. x_{k 2^m + 2^m - 1} of the digital sequence, truncated
// to m digits.
DigitalNet sequence_prefix(const SequenceGenerator& gen, uint64_t k, int m);

// Built-in families:
//   "vdc"    - s = 1, identity matrix (van der Corput)
//   "diag"   - identity matrix in every coordinate
//   "pascal" - coordinate i uses the (i-1)-th power of the binomial matrix;
//              for s = 2 this is the classical 2-D Sobol pair (I, Pascal)
GeneratingMatrixSet builtin_matrices(const std::string& family, int s, int m);
SequenceGenerator builtin_sequence(const std::string& family, int s, int m_max);
bool is_builtin_family(const std::string& family);

} // namespace dyadnet
