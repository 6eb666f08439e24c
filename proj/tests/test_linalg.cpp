#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gpd/linalg.hpp>

#include "oracle_linalg.hpp"

using namespace gpd;

namespace {

Mat from_longs(Field F, std::vector<std::vector<long>> rows) {
    Mat m(F, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = F.from_long(rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("field arithmetic basics") {
    Field Q(0), F2(2), F3(3);
    CHECK(Q.characteristic() == 0);
    CHECK(F2.is_prime_field());
    CHECK_THROWS_AS(Field(4), FieldError);
    CHECK(F3.eq(F3.add(F3.from_long(2), F3.from_long(2)), F3.one()));
    CHECK(F3.eq(F3.inv(F3.from_long(2)), F3.from_long(2)));
    CHECK(Q.to_string(Q.from_string("4/6")) == "2/3");
    // 2/3 mod 5 = 2 * 3^{-1} = 2*2 = 4
    Field F5(5);
    CHECK(F5.to_string(F5.from_string("2/3")) == "4");
    CHECK_THROWS_AS(F2.inv(F2.zero()), FieldError);
    for (long a = -6; a <= 6; ++a) {
        Scalar x = F3.from_long(a);
        CHECK(F3.is_zero(F3.add(x, F3.neg(x))));
        if (!F3.is_zero(x)) CHECK(F3.is_one(F3.mul(x, F3.inv(x))));
    }
}

TEST_CASE("rref examples") {
    Field Q(0), F2(2);
    SUBCASE("identity is its own rref") {
        auto rr = rref(Mat::identity(Q, 2));
        CHECK(rr.r.is_identity());
        CHECK(rr.pivots == std::vector<std::size_t>{0, 1});
    }
    SUBCASE("zero matrix") {
        auto rr = rref(Mat(Q, 3, 2));
        CHECK(rr.r.is_zero());
        CHECK(rr.pivots.empty());
    }
    SUBCASE("[[1,1],[1,1]] over F_2") {
        auto rr = rref(from_longs(F2, {{1, 1}, {1, 1}}));
        CHECK(rr.r == from_longs(F2, {{1, 1}, {0, 0}}));
        CHECK(rr.pivots == std::vector<std::size_t>{0});
    }
    SUBCASE("idempotent") {
        Mat m = from_longs(Q, {{2, 4, 1}, {0, 3, 7}, {2, 7, 8}});
        auto r1 = rref(m);
        auto r2 = rref(r1.r);
        CHECK(r1.r == r2.r);
    }
}

TEST_CASE("kernel_basis examples") {
    Field Q(0);
    CHECK(kernel_basis(Mat::identity(Q, 3)).cols() == 0);
    Mat z23(Q, 2, 3);
    Mat k = kernel_basis(z23);
    CHECK(k.cols() == 3);
    CHECK(k.is_identity());
    Mat m = from_longs(Q, {{1, 2}});
    Mat kb = kernel_basis(m);
    REQUIRE(kb.cols() == 1);
    CHECK(m.mul(kb).is_zero());
    CHECK(Q.eq(kb.at(0, 0), Q.from_long(-2)));
    CHECK(Q.eq(kb.at(1, 0), Q.from_long(1)));
}

TEST_CASE("solve examples") {
    Field Q(0), F3(3);
    Mat b = from_longs(Q, {{5}, {-7}});
    auto x = solve(Mat::identity(Q, 2), b);
    REQUIRE(x);
    CHECK(*x == b);
    CHECK(!solve(from_longs(Q, {{1}, {0}}), from_longs(Q, {{0}, {1}})));
    auto y = solve(from_longs(F3, {{2}}), from_longs(F3, {{1}}));
    REQUIRE(y);
    CHECK(F3.eq(y->at(0, 0), F3.from_long(2)));
    CHECK_THROWS_AS(solve(Mat(Q, 2, 2), Mat(Q, 3, 1)), FieldError);
}

TEST_CASE("rank and invert examples") {
    Field Q(0), F2(2);
    CHECK(invert(Mat::identity(Q, 4))->is_identity());
    CHECK(rank(Mat(Q, 3, 3)) == 0);
    Mat u = from_longs(F2, {{1, 1}, {0, 1}});
    auto ui = invert(u);
    REQUIRE(ui);
    CHECK(*ui == u);  // self-inverse
    CHECK(u.mul(*ui).is_identity());
    CHECK(!invert(from_longs(Q, {{1, 2}, {2, 4}})));
}

TEST_CASE("rank/kernel/solve invariants on pseudo-random matrices") {
    oracle::SplitMix rng(42);
    for (std::uint32_t p : {0u, 2u, 3u, 5u}) {
        Field F(p);
        for (int it = 0; it < 30; ++it) {
            std::size_t r = rng.next() % 5, c = rng.next() % 5;
            Mat m(F, r, c);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j)
                    m.at(i, j) = F.from_long(static_cast<long>(rng.next() % 7) - 3);
            CHECK(rank(m) == rank(m.transpose()));
            Mat k = kernel_basis(m);
            CHECK(k.cols() + rank(m) == c);
            if (r > 0 && c > 0) {
                CHECK(m.mul(k).is_zero());
                // solve round-trip: a x' = a x for the canonical solution
                Mat x(F, c, 1);
                for (std::size_t j = 0; j < c; ++j)
                    x.at(j, 0) = F.from_long(static_cast<long>(rng.next() % 5) - 2);
                Mat b = m.mul(x);
                auto xp = solve(m, b);
                REQUIRE(xp);
                CHECK(m.mul(*xp) == b);
            }
        }
    }
}

TEST_CASE("agreement with the naive Gaussian elimination oracle on 6x6") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        Field F(p);
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            oracle::SplitMix rng(seed * 1000 + p);
            Mat m(F, 6, 6);
            oracle::FpMat om(p, 6, 6);
            for (std::size_t i = 0; i < 6; ++i)
                for (std::size_t j = 0; j < 6; ++j) {
                    std::uint64_t v = rng.next() % p;
                    m.at(i, j) = F.from_long(static_cast<long>(v));
                    om.at(i, j) = v;
                }
            CHECK(rank(m) == oracle::fp_rank(om));
            std::vector<std::size_t> opiv;
            auto orr = oracle::gauss(om, &opiv);
            auto rr = rref(m);
            REQUIRE(rr.pivots == opiv);
            for (std::size_t i = 0; i < 6; ++i)
                for (std::size_t j = 0; j < 6; ++j)
                    CHECK(std::get<std::uint64_t>(rr.r.at(i, j)) == orr.at(i, j));
        }
    }
}

TEST_CASE("kernel agrees with exhaustive null-space enumeration over F_2") {
    Field F2(2);
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        oracle::SplitMix rng(seed);
        std::size_t r = 2 + rng.next() % 2, c = 2 + rng.next() % 3;
        Mat m(F2, r, c);
        oracle::FpMat om(2, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                std::uint64_t v = rng.next() % 2;
                m.at(i, j) = F2.from_long(static_cast<long>(v));
                om.at(i, j) = v;
            }
        auto all = oracle::fp_kernel_exhaustive(om);
        CHECK(all.size() == (1u << kernel_basis(m).cols()));
    }
}

TEST_CASE("rational arithmetic stays exact under elimination") {
    Field Q(0);
    // Hilbert-like matrix: notoriously ill-conditioned in floating point.
    Mat h(Q, 5, 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            h.at(i, j) = Q.from_string("1/" + std::to_string(i + j + 1));
    auto hi = invert(h);
    REQUIRE(hi);
    CHECK(h.mul(*hi).is_identity());
}
