#include "formats.hpp"

#include <sstream>

namespace dyadnet {

namespace {

void append_matrix(std::string& out, const BitMatrix& m) {
    out += std::to_string(m.rows());
    out += ' ';
    out += std::to_string(m.cols());
    out += '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out += m.entry(r, c) ? '1' : '0';
        out += '\n';
    }
}

// Reads one "rows cols" + bit-row block from the stream. Returns false on
// clean EOF before the header.
bool read_matrix_block(std::istream& in, BitMatrix& out) {
    long long rows = -1, cols = -1;
    if (!(in >> rows)) return false;
    require(static_cast<bool>(in >> cols), errc::parse_error,
            "matrix header: missing column count");
    require(rows >= 0 && cols >= 0, errc::parse_error, "matrix header: negative dimension");
    BitMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (long long r = 0; r < rows; ++r) {
        std::string line;
        require(static_cast<bool>(in >> line), errc::parse_error, "matrix body: missing row");
        require(line.size() == static_cast<std::size_t>(cols), errc::parse_error,
                "matrix body: row has wrong length");
        for (long long c = 0; c < cols; ++c) {
            char ch = line[static_cast<std::size_t>(c)];
            require(ch == '0' || ch == '1', errc::parse_error, "matrix body: entry not 0 or 1");
            if (ch == '1') m.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c), true);
        }
    }
    out = std::move(m);
    return true;
}

} // namespace

std::string format_matrix(const BitMatrix& m) {
    std::string out;
    append_matrix(out, m);
    return out;
}

std::string format_matrix_set(const GeneratingMatrixSet& g) {
    std::string out;
    for (const BitMatrix& m : g.mats) append_matrix(out, m);
    return out;
}

BitMatrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    BitMatrix m;
    require(read_matrix_block(in, m), errc::parse_error, "empty matrix text");
    return m;
}

GeneratingMatrixSet parse_matrix_set(const std::string& text) {
    std::istringstream in(text);
    GeneratingMatrixSet g;
    BitMatrix m;
    while (read_matrix_block(in, m)) {
        require(m.rows() == m.cols(), errc::parse_error, "generating matrices must be square");
        if (!g.mats.empty())
            require(m.rows() == g.mats.front().rows(), errc::parse_error,
                    "generating matrices must all have the same size");
        g.mats.push_back(std::move(m));
    }
    require(!g.mats.empty(), errc::parse_error, "no matrices in input");
    g.s = static_cast<int>(g.mats.size());
    g.m = static_cast<int>(g.mats.front().rows());
    g.validate();
    return g;
}

std::string format_net(const DigitalNet& p) {
    std::string out;
    out += std::to_string(p.s());
    out += ' ';
    out += std::to_string(p.m());
    out += ' ';
    out += std::to_string(p.size());
    out += '\n';
    for (std::size_t n = 0; n < p.size(); ++n) {
        for (int i = 0; i < p.s(); ++i) {
            if (i) out += ' ';
            for (int j = 1; j <= p.m(); ++j) out += p.digit(n, i, j) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

DigitalNet parse_net(const std::string& text) {
    std::istringstream in(text);
    long long s = 0, m = 0, n_points = 0;
    require(static_cast<bool>(in >> s >> m >> n_points), errc::parse_error, "net header: expected \"s m N\"");
    require(s >= 1 && m >= 0 && m <= kMaxDigits && n_points >= 0, errc::parse_error,
            "net header: values out of range");
    std::vector<uint64_t> coords;
    coords.reserve(static_cast<std::size_t>(n_points * s));
    if (m == 0) // zero-digit coordinates carry no tokens
        return DigitalNet(static_cast<int>(s), 0,
                          std::vector<uint64_t>(static_cast<std::size_t>(n_points * s), 0));
    for (long long n = 0; n < n_points; ++n) {
        for (long long i = 0; i < s; ++i) {
            std::string bits;
            require(static_cast<bool>(in >> bits), errc::parse_error, "net body: missing coordinate");
            require(bits.size() == static_cast<std::size_t>(m), errc::parse_error,
                    "net body: coordinate has wrong digit count");
            uint64_t num = 0;
            for (char ch : bits) {
                require(ch == '0' || ch == '1', errc::parse_error, "net body: digit not 0 or 1");
                num = (num << 1) | static_cast<uint64_t>(ch == '1');
            }
            coords.push_back(num);
        }
    }
    return DigitalNet(static_cast<int>(s), static_cast<int>(m), std::move(coords));
}

} // namespace dyadnet
