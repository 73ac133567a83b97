#include "doctest.h"

#include <random>

#include "error.hpp"
#include "formats.hpp"
#include "gf2.hpp"

using namespace dyadnet;

namespace {

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (rng() & 1) m.set(r, c, true);
    return m;
}

BitVector random_vector(std::mt19937_64& rng, std::size_t len) {
    BitVector v(len);
    for (std::size_t i = 0; i < len; ++i)
        if (rng() & 1) v.set(i, true);
    return v;
}

} // namespace

TEST_SUITE("gf2") {

TEST_CASE("mat_vec_mul on identity and zero") {
    BitVector v{1, 0, 1};
    CHECK(mat_vec_mul(BitMatrix::identity(3), v) == v);
    CHECK(mat_vec_mul(BitMatrix::zero(3, 3), BitVector{1, 1, 1}) == BitVector{0, 0, 0});
}

TEST_CASE("mat_vec_mul 2x2 hand case, cross-checked exhaustively") {
    BitMatrix m = BitMatrix::from_rows({{1, 1}, {0, 1}});
    CHECK(mat_vec_mul(m, BitVector{1, 1}) == BitVector{0, 1});

    // every 2x2 matrix against every input, entry-by-entry definition
    for (int bits = 0; bits < 16; ++bits) {
        BitMatrix a(2, 2);
        for (int e = 0; e < 4; ++e)
            if (bits & (1 << e)) a.set(e / 2, e % 2, true);
        for (int vb = 0; vb < 4; ++vb) {
            BitVector v{vb & 1, (vb >> 1) & 1};
            BitVector got = mat_vec_mul(a, v);
            for (int r = 0; r < 2; ++r) {
                int expect = (a.entry(r, 0) & v.test(0)) ^ (a.entry(r, 1) & v.test(1));
                CHECK(static_cast<int>(got.test(r)) == expect);
            }
        }
    }
}

TEST_CASE("mat_vec_mul rejects mismatched length") {
    CHECK_THROWS_AS(mat_vec_mul(BitMatrix::identity(3), BitVector{1, 0}), Error);
}

TEST_CASE("rank examples") {
    CHECK(rank(BitMatrix::identity(5)) == 5);
    CHECK(rank(BitMatrix::zero(4, 4)) == 0);
    CHECK(rank(BitMatrix::from_rows({{1, 1}, {1, 1}})) == 1);
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(BitMatrix::identity(4)).empty());

    auto zero_kernel = kernel_basis(BitMatrix::zero(2, 3));
    CHECK(zero_kernel.size() == 3);

    // span of the kernel of [[1,1]] equals {(0,0),(1,1)}
    auto k = kernel_basis(BitMatrix::from_rows({{1, 1}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == BitVector{1, 1});
}

TEST_CASE("empty matrices are legal") {
    CHECK(rank(BitMatrix(0, 3)) == 0);
    CHECK(kernel_basis(BitMatrix(0, 3)).size() == 3); // full space
    CHECK(rank(BitMatrix(3, 0)) == 0);
    CHECK(kernel_basis(BitMatrix(3, 0)).empty());
    CHECK(rank(BitMatrix(0, 0)) == 0);
}

TEST_CASE("rank-nullity and kernel membership on random matrices") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t rows = rng() % 8;
        std::size_t cols = rng() % 8;
        BitMatrix m = random_matrix(rng, rows, cols);
        auto basis = kernel_basis(m);
        CHECK(rank(m) + basis.size() == cols);

        // every vector in the span is annihilated
        if (!basis.empty()) {
            BitVector v(cols);
            for (const auto& b : basis)
                if (rng() & 1) v.xor_with(b);
            CHECK(mat_vec_mul(m, v).is_zero());
        }
        for (const auto& b : basis) CHECK(mat_vec_mul(m, b).is_zero());

        // basis linear independence: stack as rows, rank must equal count
        if (!basis.empty()) {
            BitMatrix stacked(basis.size(), cols);
            for (std::size_t r = 0; r < basis.size(); ++r) stacked.set_row(r, basis[r]);
            CHECK(rank(stacked) == basis.size());
        }
    }
}

TEST_CASE("mat_vec_mul distributes over xor") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t rows = 1 + rng() % 7;
        std::size_t cols = 1 + rng() % 7;
        BitMatrix m = random_matrix(rng, rows, cols);
        BitVector v = random_vector(rng, cols);
        BitVector w = random_vector(rng, cols);
        BitVector vw = v;
        vw.xor_with(w);
        BitVector lhs = mat_vec_mul(m, vw);
        BitVector rhs = mat_vec_mul(m, v);
        rhs.xor_with(mat_vec_mul(m, w));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("pascal matrix is unipotent upper triangular") {
    BitMatrix p = BitMatrix::pascal(6);
    for (std::size_t r = 0; r < 6; ++r) {
        CHECK(p.entry(r, r));
        for (std::size_t c = 0; c < r; ++c) CHECK(!p.entry(r, c));
    }
    // column c holds binomials C(c, r): column 4 is 1,0,0,0,1
    CHECK(p.entry(0, 4));
    CHECK(!p.entry(1, 4));
    CHECK(!p.entry(2, 4));
    CHECK(!p.entry(3, 4));
    CHECK(p.entry(4, 4));
}

TEST_CASE("matrix text format round trip") {
    std::mt19937_64 rng(43);
    BitMatrix m = random_matrix(rng, 4, 4);
    CHECK(parse_matrix(format_matrix(m)) == m);

    std::string text = "2 3\n101\n110\n";
    BitMatrix parsed = parse_matrix(text);
    CHECK(parsed.entry(0, 0));
    CHECK(!parsed.entry(0, 1));
    CHECK(parsed.entry(1, 2) == false);
    CHECK(format_matrix(parsed) == text);
}

TEST_CASE("matrix parse errors") {
    CHECK_THROWS_AS(parse_matrix(""), Error);
    CHECK_THROWS_AS(parse_matrix("2 2\n10\n"), Error);      // missing row
    CHECK_THROWS_AS(parse_matrix("2 2\n10\n012\n"), Error); // wrong length
    CHECK_THROWS_AS(parse_matrix("1 2\n1x\n"), Error);      // bad digit
}

TEST_CASE("entry access out of range is an error") {
    BitMatrix m(2, 2);
    CHECK_THROWS_AS((void)m.entry(2, 0), Error);
    CHECK_THROWS_AS((void)m.entry(0, 2), Error);
    BitVector v(3);
    CHECK_THROWS_AS((void)v.test(3), Error);
}

} // TEST_SUITE
