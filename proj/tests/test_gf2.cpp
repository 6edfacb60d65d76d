#include "nmc/gf2.hpp"

#include <doctest.h>

#include <set>

using namespace nmc;

namespace {

GF2Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
    GF2Matrix A(r, c);
    for (std::size_t i = 0; i < r; ++i) A.set_row(i, rng.bits(c));
    return A;
}

}  // namespace

TEST_CASE("solve_affine on identity") {
    auto res = solve_affine(GF2Matrix::identity(3), BitString::from_bits("101"));
    auto& S = std::get<AffineSubspace>(res);
    CHECK(S.dim() == 0);
    CHECK(S.offset.to_bits() == "101");
}

TEST_CASE("solve_affine on the zero matrix spans everything") {
    auto res = solve_affine(GF2Matrix(3, 3), BitString(3));
    CHECK(std::get<AffineSubspace>(res).dim() == 3);
    CHECK(std::holds_alternative<NoSolution>(solve_affine(GF2Matrix(3, 3), BitString::from_bits("010"))));
}

TEST_CASE("single parity constraint") {
    GF2Matrix A(1, 2);
    A.set(0, 0, true);
    A.set(0, 1, true);
    auto S = std::get<AffineSubspace>(solve_affine(A, BitString::from_bits("1")));
    CHECK(S.dim() == 1);
    CHECK(S.offset.to_bits() == "10");
    CHECK(S.basis[0].to_bits() == "11");
}

TEST_CASE("enumerated solution sets match brute force at ambient length <= 12") {
    Rng rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t cols = 1 + rng.below(12), rows = 1 + rng.below(12);
        auto A = random_matrix(rows, cols, rng);
        if (trial % 3 == 0) A.set_row(rows - 1, BitString(cols));
        auto b = rng.bits(rows);
        std::set<BitString> brute;
        for (uint64_t v = 0; v < (uint64_t{1} << cols); ++v) {
            auto x = BitString::from_uint(v, static_cast<unsigned>(cols));
            if (A.apply(x) == b) brute.insert(x);
        }
        auto res = solve_affine(A, b);
        if (brute.empty()) {
            CHECK(std::holds_alternative<NoSolution>(res));
            continue;
        }
        auto& S = std::get<AffineSubspace>(res);
        CHECK(S.dim() == cols - rank(A));
        auto members = S.enumerate();
        std::set<BitString> got(members.begin(), members.end());
        CHECK(got.size() == (std::size_t{1} << S.dim()));
        CHECK(got == brute);
    }
}

TEST_CASE("rank is idempotent and bounded") {
    Rng rng(1);
    auto A = random_matrix(20, 30, rng);
    std::size_t r = rank(A);
    CHECK(r <= 20);
    CHECK(rank(A) == r);
    CHECK(rank(A.transpose()) == r);
}

TEST_CASE("LinearSystem samples satisfy the system on large instances") {
    Rng rng(9);
    auto A = random_matrix(40, 300, rng);
    LinearSystem sys(A);
    CHECK(sys.rank() == 40);
    auto b = rng.bits(40);
    for (int i = 0; i < 20; ++i) {
        auto x = sys.sample(b, rng);
        REQUIRE(x);
        CHECK(A.apply(*x) == b);
    }
}

TEST_CASE("sample_subspace over a line is balanced") {
    AffineSubspace S{2, BitString::from_bits("00"), {BitString::from_bits("11")}};
    Rng rng(2024);
    int zeros = 0;
    const int N = 10000;
    for (int i = 0; i < N; ++i) {
        auto x = sample_subspace(S, rng);
        CHECK((x.to_bits() == "00" || x.to_bits() == "11"));
        zeros += x.is_zero();
    }
    double chi = 2.0 * (zeros - N / 2.0) * (zeros - N / 2.0) / (N / 2.0);
    CHECK(chi < 6.63);  // 1 dof, p = 0.01
}

TEST_CASE("dim 0 subspace samples its offset") {
    AffineSubspace S{3, BitString::from_bits("110"), {}};
    Rng rng(1);
    CHECK(sample_subspace(S, rng).to_bits() == "110");
}
