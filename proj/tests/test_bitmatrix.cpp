#include <catch2/catch_amalgamated.hpp>

#include "hfrank/f2linalg.hpp"

using namespace hfrank;

namespace {

// deterministic xorshift for property-style checks
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    BitMatrix matrix(std::size_t r, std::size_t c) {
        BitMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.set(i, j, next() & 1);
        return m;
    }
};

BitMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    std::size_t r = rows.size(), c = rows.begin()->size();
    BitMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (int v : row) m.set(i, j++, v != 0);
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("rank basics") {
    CHECK(rank(BitMatrix(0, 0)) == 0);
    CHECK(rank(BitMatrix::identity(3)) == 3);
    CHECK(rank(from_rows({{1, 1}, {1, 1}})) == 1);
    CHECK(rank(BitMatrix::zero(2, 3)) == 0);
}

TEST_CASE("rank equals rank of transpose") {
    Rng rng(0xabcdef12345);
    for (int t = 0; t < 50; ++t) {
        BitMatrix m = rng.matrix(1 + t % 7, 1 + (t * 3) % 9);
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(BitMatrix::identity(2)).cols() == 0);
    CHECK(kernel_basis(BitMatrix::zero(2, 3)).cols() == 3);
}

TEST_CASE("kernel relation m k = 0 and dimension count") {
    Rng rng(0x5eed);
    for (int t = 0; t < 50; ++t) {
        BitMatrix m = rng.matrix(1 + t % 6, 1 + (t * 7) % 8);
        BitMatrix k = kernel_basis(m);
        CHECK(m.mul(k).is_zero());
        CHECK(rank(m) + k.cols() == m.cols());
        CHECK(rank(k) == k.cols());
    }
    BitMatrix parity = from_rows({{1, 1}});
    BitMatrix k = kernel_basis(parity);
    REQUIRE(k.cols() == 1);
    CHECK(k.get(0, 0));
    CHECK(k.get(1, 0));
}

TEST_CASE("normalize_projection") {
    SECTION("identity") {
        auto [bc, r] = normalize_projection(BitMatrix::identity(4));
        CHECK(r == 4);
        CHECK(bc.left.mul(BitMatrix::identity(4)).mul(bc.right) == BitMatrix::identity(4));
    }
    SECTION("zero") {
        auto [bc, r] = normalize_projection(BitMatrix::zero(3, 2));
        CHECK(r == 0);
    }
    SECTION("random round trip is bit exact") {
        Rng rng(0x123457);
        for (int t = 0; t < 40; ++t) {
            BitMatrix f = rng.matrix(4, 5);
            auto [bc, r] = normalize_projection(f);
            CHECK(r == rank(f));
            CHECK(is_invertible(bc.left));
            CHECK(is_invertible(bc.right));
            BitMatrix nf = bc.left.mul(f).mul(bc.right);
            BitMatrix expect(4, 5);
            for (std::size_t i = 0; i < r; ++i) expect.set(i, i, true);
            CHECK(nf == expect);
        }
    }
}

TEST_CASE("rank invariant under basis change") {
    Rng rng(0x77aa);
    for (int t = 0; t < 30; ++t) {
        BitMatrix m = rng.matrix(5, 4);
        // left/right factors of projection normalizations are generic invertibles
        auto [bl, rl] = normalize_projection(rng.matrix(5, 5) ^ BitMatrix::identity(5));
        auto [br, rr] = normalize_projection(rng.matrix(4, 4) ^ BitMatrix::identity(4));
        CHECK(rank(bl.left.mul(m).mul(br.right)) == rank(m));
    }
}

TEST_CASE("inverse and solve") {
    BitMatrix a = from_rows({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
    BitMatrix inv = inverse(a);
    CHECK(a.mul(inv) == BitMatrix::identity(3));
    CHECK(inv.mul(a) == BitMatrix::identity(3));
    BitMatrix b = from_rows({{1}, {0}, {1}});
    BitMatrix x = solve(a, b);
    CHECK(a.mul(x) == b);
    CHECK_THROWS_AS(inverse(from_rows({{1, 1}, {1, 1}})), InvariantViolation);
}

TEST_CASE("assemble_blocks") {
    BitMatrix m = from_rows({{1, 0}, {1, 1}});
    SECTION("single block") {
        BitMatrix out = assemble_blocks({{0, 0, m}}, 1, 1);
        CHECK(out == m);
    }
    SECTION("vertical stack placement") {
        BitMatrix out = assemble_blocks({{0, 0, m}, {1, 0, BitMatrix::identity(2)}}, 2, 1);
        CHECK(out == BitMatrix::vstack(m, BitMatrix::identity(2)));
    }
    SECTION("staircase with offset") {
        // two row bands, three column bands; blocks at (j, j) and (j, j+1)
        BitMatrix out = assemble_blocks(
            {{0, 0, m}, {0, 1, m}, {1, 1, m}, {1, 2, m}},
            std::vector<std::size_t>{2, 2}, std::vector<std::size_t>{2, 2, 2});
        CHECK(out.rows() == 4);
        CHECK(out.cols() == 6);
        CHECK(out.get(0, 0));
        CHECK(out.get(2, 2));
        CHECK(out.get(3, 4));
        CHECK_FALSE(out.get(0, 4));
    }
    SECTION("band mismatch") {
        CHECK_THROWS_AS(
            assemble_blocks({{0, 0, m}, {0, 1, BitMatrix::zero(3, 2)}}, 1, 2),
            DimensionMismatch);
    }
}

TEST_CASE("homology basis and induced maps") {
    // d(b) = c on a three generator complex: homology = span{a}
    BitMatrix d(3, 3);
    d.set(2, 1, true);
    CHECK(homology_rank(d) == 1);
    HomologyBasis hb(d);
    REQUIRE(hb.dim() == 1);
    BitVec a(3);
    a.set(0);
    BitVec coeff = hb.project(a);
    CHECK(coeff.get(0));
    BitVec c(3);
    c.set(2);
    CHECK_FALSE(hb.project(c).any());  // c is a boundary
}
