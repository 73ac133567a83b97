#pragma once

// Exact linear algebra over GF(2). Vectors and matrices are bit-packed into
// 64-bit words internally; the observable contract is entry-wise {0,1}
// semantics with bounds-checked access.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "error.hpp"

namespace dyadnet {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), w_((len + 63) / 64, 0) {}
    BitVector(std::initializer_list<int> bits) : BitVector(bits.size()) {
        std::size_t i = 0;
        for (int b : bits) set(i++, b != 0);
    }

    std::size_t size() const { return len_; }

    bool test(std::size_t i) const {
        require(i < len_, errc::invalid_argument, "BitVector index out of range");
        return (w_[i / 64] >> (i % 64)) & 1u;
    }

    void set(std::size_t i, bool v) {
        require(i < len_, errc::invalid_argument, "BitVector index out of range");
        uint64_t mask = uint64_t(1) << (i % 64);
        if (v)
            w_[i / 64] |= mask;
        else
            w_[i / 64] &= ~mask;
    }

    void flip(std::size_t i) { set(i, !test(i)); }

    // In-place XOR; lengths must agree.
    void xor_with(const BitVector& o) {
        require(len_ == o.len_, errc::invalid_argument, "BitVector length mismatch in xor");
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    }

    // Parity of the AND with another vector (GF(2) inner product).
    bool dot(const BitVector& o) const {
        require(len_ == o.len_, errc::invalid_argument, "BitVector length mismatch in dot");
        uint64_t acc = 0;
        for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
        return __builtin_parityll(acc);
    }

    bool is_zero() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }

    // Index of the last set bit plus one; 0 for the zero vector.
    std::size_t last_one_pos1() const {
        for (std::size_t k = w_.size(); k-- > 0;)
            if (w_[k]) return k * 64 + 64 - __builtin_clzll(w_[k]);
        return 0;
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (uint64_t w : w_) c += __builtin_popcountll(w);
        return c;
    }

    std::span<const uint64_t> words() const { return w_; }

    friend bool operator==(const BitVector& a, const BitVector& b) {
        return a.len_ == b.len_ && a.w_ == b.w_;
    }

private:
    std::size_t len_ = 0;
    std::vector<uint64_t> w_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), r_(rows, BitVector(cols)) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix zero(std::size_t rows, std::size_t cols) { return BitMatrix(rows, cols); }
    // Upper-triangular binomial matrix: entry(r,c) = C(c,r) mod 2.
    static BitMatrix pascal(std::size_t n);
    static BitMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool entry(std::size_t r, std::size_t c) const {
        require(r < rows_, errc::invalid_argument, "BitMatrix row index out of range");
        return r_[r].test(c);
    }

    void set(std::size_t r, std::size_t c, bool v) {
        require(r < rows_, errc::invalid_argument, "BitMatrix row index out of range");
        r_[r].set(c, v);
    }

    const BitVector& row(std::size_t r) const {
        require(r < rows_, errc::invalid_argument, "BitMatrix row index out of range");
        return r_[r];
    }

    void set_row(std::size_t r, const BitVector& v) {
        require(r < rows_, errc::invalid_argument, "BitMatrix row index out of range");
        require(v.size() == cols_, errc::invalid_argument, "row length mismatch");
        r_[r] = v;
    }

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.r_ == b.r_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BitVector> r_;
};

// y = M v over GF(2); v.size() must equal M.cols().
BitVector mat_vec_mul(const BitMatrix& m, const BitVector& v);

BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b);
BitMatrix mat_pow(const BitMatrix& a, unsigned e);
BitMatrix transpose(const BitMatrix& m);

std::size_t rank(const BitMatrix& m);

// Any basis of the null space {v : Mv = 0}; size is cols - rank.
std::vector<BitVector> kernel_basis(const BitMatrix& m);

} // namespace dyadnet
