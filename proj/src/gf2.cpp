#include "gf2.hpp"

namespace dyadnet {

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::pascal(std::size_t n) {
    // Lucas: C(c,r) is odd iff the bits of r are a subset of the bits of c.
    BitMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r; c < n; ++c)
            if ((r & c) == r) m.set(r, c, true);
    return m;
}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    std::size_t nr = rows.size();
    std::size_t nc = nr ? rows.begin()->size() : 0;
    BitMatrix m(nr, nc);
    std::size_t r = 0;
    for (const auto& row : rows) {
        require(row.size() == nc, errc::invalid_argument, "ragged initializer rows");
        std::size_t c = 0;
        for (int b : row) m.set(r, c++, b != 0);
        ++r;
    }
    return m;
}

BitVector mat_vec_mul(const BitMatrix& m, const BitVector& v) {
    require(v.size() == m.cols(), errc::invalid_argument,
            "mat_vec_mul: vector length does not match matrix columns");
    BitVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) out.set(r, m.row(r).dot(v));
    return out;
}

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
    require(a.cols() == b.rows(), errc::invalid_argument, "mat_mul: inner dimensions differ");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        BitVector acc(b.cols());
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (a.entry(r, k)) acc.xor_with(b.row(k));
        out.set_row(r, acc);
    }
    return out;
}

BitMatrix mat_pow(const BitMatrix& a, unsigned e) {
    require(a.rows() == a.cols(), errc::invalid_argument, "mat_pow: matrix not square");
    BitMatrix result = BitMatrix::identity(a.rows());
    BitMatrix base = a;
    while (e) {
        if (e & 1) result = mat_mul(result, base);
        base = mat_mul(base, base);
        e >>= 1;
    }
    return result;
}

BitMatrix transpose(const BitMatrix& m) {
    BitMatrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.entry(r, c)) out.set(c, r, true);
    return out;
}

namespace {

// Row echelon form in place. Returns pivot columns in order.
std::vector<std::size_t> echelonize(std::vector<BitVector>& rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols && lead < rows.size(); ++c) {
        std::size_t sel = lead;
        while (sel < rows.size() && !rows[sel].test(c)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[lead], rows[sel]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != lead && rows[r].test(c)) rows[r].xor_with(rows[lead]);
        pivots.push_back(c);
        ++lead;
    }
    return pivots;
}

} // namespace

std::size_t rank(const BitMatrix& m) {
    std::vector<BitVector> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    return echelonize(rows, m.cols()).size();
}

std::vector<BitVector> kernel_basis(const BitMatrix& m) {
    std::vector<BitVector> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    std::vector<std::size_t> pivots = echelonize(rows, m.cols());

    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<BitVector> basis;
    basis.reserve(m.cols() - pivots.size());
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        BitVector v(m.cols());
        v.set(f, true);
        // Reduced form: pivot row p has a 1 in pivots[p]; solve pivot entries.
        for (std::size_t p = 0; p < pivots.size(); ++p)
            if (rows[p].test(f)) v.set(pivots[p], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace dyadnet
