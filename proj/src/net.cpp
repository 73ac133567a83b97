#include "net.hpp"

#include <cmath>

namespace dyadnet {

void GeneratingMatrixSet::validate() const {
    require(s >= 1, errc::invalid_argument, "dimension must be >= 1");
    require(m >= 0 && m <= kMaxDigits, errc::invalid_argument, "digit depth out of range");
    require(static_cast<int>(mats.size()) == s, errc::invalid_argument,
            "matrix count does not match dimension");
    for (const BitMatrix& c : mats)
        require(c.rows() == static_cast<std::size_t>(m) && c.cols() == static_cast<std::size_t>(m),
                errc::invalid_argument, "generating matrices must be square of size m");
}

DigitalNet::DigitalNet(int s, int m, std::vector<uint64_t> coords) : s_(s), m_(m), coords_(std::move(coords)) {
    require(s_ >= 1, errc::invalid_argument, "dimension must be >= 1");
    require(m_ >= 0 && m_ <= kMaxDigits, errc::invalid_argument, "digit depth out of range");
    require(coords_.size() % s_ == 0, errc::invalid_argument, "coordinate array not a multiple of s");
    uint64_t lim = uint64_t(1) << m_;
    for (uint64_t c : coords_)
        require(c < lim, errc::invalid_argument, "coordinate numerator exceeds m digits");
}

double DigitalNet::coord(std::size_t n, int i) const {
    return std::ldexp(static_cast<double>(num(n, i)), -m_);
}

int DigitalNet::digit(std::size_t n, int i, int j) const {
    require(j >= 1 && j <= m_, errc::invalid_argument, "digit index out of range");
    return static_cast<int>((num(n, i) >> (m_ - j)) & 1u);
}

namespace {

// Column r of C packed as a numerator mask: bit (m-j) set iff C[j-1][r] = 1.
std::vector<uint64_t> column_masks(const BitMatrix& c, int m) {
    std::vector<uint64_t> cols(m, 0);
    for (int r = 0; r < m; ++r)
        for (int j = 1; j <= m; ++j)
            if (c.entry(j - 1, r)) cols[r] |= uint64_t(1) << (m - j);
    return cols;
}

} // namespace

DigitalNet generate_net(const GeneratingMatrixSet& g) {
    g.validate();
    const uint64_t n_points = uint64_t(1) << g.m;
    std::vector<std::vector<uint64_t>> cols(g.s);
    for (int i = 0; i < g.s; ++i) cols[i] = column_masks(g.mats[i], g.m);

    std::vector<uint64_t> coords(n_points * g.s, 0);
    for (uint64_t n = 0; n < n_points; ++n) {
        for (int i = 0; i < g.s; ++i) {
            uint64_t acc = 0;
            uint64_t bits = n;
            int r = 0;
            while (bits) {
                if (bits & 1) acc ^= cols[i][r];
                bits >>= 1;
                ++r;
            }
            coords[n * g.s + i] = acc;
        }
    }
    return DigitalNet(g.s, g.m, std::move(coords));
}

DigitalNet digital_shift(const DigitalNet& p, const ShiftVector& t) {
    require(p.s() == t.s && p.m() == t.m, errc::invalid_argument,
            "digital_shift: dimension or depth mismatch");
    std::vector<uint64_t> coords = p.raw();
    const std::size_t n_points = p.size();
    for (std::size_t n = 0; n < n_points; ++n)
        for (int i = 0; i < p.s(); ++i) coords[n * p.s() + i] ^= t.digits[i];
    return DigitalNet(p.s(), p.m(), std::move(coords));
}

double truncate(double y, int m) {
    require(y >= 0.0 && y < 1.0, errc::invalid_argument, "truncate: y outside [0,1)");
    require(m >= 0 && m <= kMaxDigits, errc::invalid_argument, "truncate: depth out of range");
    return std::ldexp(std::floor(std::ldexp(y, m)), -m);
}

DigitalNet extend_with_index(const DigitalNet& p) {
    const std::size_t n_points = p.size();
    require(n_points == (uint64_t(1) << p.m()), errc::invalid_argument,
            "extend_with_index: net must have exactly 2^m points");
    std::vector<uint64_t> coords((p.s() + 1) * n_points);
    for (std::size_t n = 0; n < n_points; ++n) {
        coords[n * (p.s() + 1)] = n; // binary digits of n, MSB first, are n/2^m
        for (int i = 0; i < p.s(); ++i) coords[n * (p.s() + 1) + 1 + i] = p.num(n, i);
    }
    return DigitalNet(p.s() + 1, p.m(), std::move(coords));
}

GeneratingMatrixSet SequenceGenerator::matrices(int m) const {
    require(m >= 0 && m <= m_max, errc::invalid_argument, "depth exceeds generator m_max");
    GeneratingMatrixSet g;
    g.s = s;
    g.m = m;
    g.mats.reserve(s);
    for (int i = 0; i < s; ++i) g.mats.push_back(block(i, m));
    g.validate();
    return g;
}

namespace {

int bitlength(uint64_t k) {
    int len = 0;
    while (k) {
        ++len;
        k >>= 1;
    }
    return len;
}

} // namespace

DigitalNet sequence_prefix(const SequenceGenerator& gen, uint64_t k, int m) {
    require(m >= 0, errc::invalid_argument, "sequence_prefix: negative depth");
    const int depth = m + bitlength(k);
    require(depth <= gen.m_max, errc::invalid_argument,
            "sequence_prefix: generation depth m + bitlength(k) exceeds m_max");

    GeneratingMatrixSet g = gen.matrices(depth);
    std::vector<std::vector<uint64_t>> cols(g.s);
    for (int i = 0; i < g.s; ++i) cols[i] = column_masks(g.mats[i], depth);

    const uint64_t n_points = uint64_t(1) << m;
    const uint64_t first = k << m;
    std::vector<uint64_t> coords(n_points * g.s);
    for (uint64_t r = 0; r < n_points; ++r) {
        uint64_t n = first + r;
        for (int i = 0; i < g.s; ++i) {
            uint64_t acc = 0;
            uint64_t bits = n;
            int pos = 0;
            while (bits) {
                if (bits & 1) acc ^= cols[i][pos];
                bits >>= 1;
                ++pos;
            }
            coords[r * g.s + i] = acc >> (depth - m); // keep the m most significant digits
        }
    }
    return DigitalNet(g.s, m, std::move(coords));
}

bool is_builtin_family(const std::string& family) {
    return family == "vdc" || family == "diag" || family == "pascal";
}

GeneratingMatrixSet builtin_matrices(const std::string& family, int s, int m) {
    require(s >= 1, errc::invalid_argument, "dimension must be >= 1");
    require(m >= 0 && m <= kMaxDigits, errc::invalid_argument, "digit depth out of range");
    GeneratingMatrixSet g;
    g.s = s;
    g.m = m;
    if (family == "vdc") {
        require(s == 1, errc::invalid_argument, "family vdc is one-dimensional");
        g.mats.push_back(BitMatrix::identity(m));
    } else if (family == "diag") {
        for (int i = 0; i < s; ++i) g.mats.push_back(BitMatrix::identity(m));
    } else if (family == "pascal") {
        BitMatrix p = BitMatrix::pascal(m);
        for (int i = 0; i < s; ++i) g.mats.push_back(mat_pow(p, static_cast<unsigned>(i)));
    } else {
        fail(errc::invalid_argument, "unknown built-in family: " + family);
    }
    g.validate();
    return g;
}

SequenceGenerator builtin_sequence(const std::string& family, int s, int m_max) {
    require(is_builtin_family(family), errc::invalid_argument, "unknown built-in family: " + family);
    require(!(family == "vdc") || s == 1, errc::invalid_argument, "family vdc is one-dimensional");
    SequenceGenerator gen;
    gen.s = s;
    gen.m_max = m_max;
    gen.name = family;
    gen.block = [family](int i, int m) {
        if (family == "pascal") return mat_pow(BitMatrix::pascal(m), static_cast<unsigned>(i));
        return BitMatrix::identity(m);
    };
    return gen;
}

} // namespace dyadnet
