#include "doctest.h"
#include "lcy/affine.hpp"
#include "lcy/pair_model.hpp"

#include <random>
#include <set>

using namespace lcy;

TEST_CASE("monodromy of toric pairs is trivial") {
    CHECK(AffineAtlas({1, 1, 1}).monodromy() == M2::identity());
    CHECK(AffineAtlas({0, 0, 0, 0}).monodromy() == M2::identity());
    CHECK(AffineAtlas({-1, -1, -1, -1, -1, -1}).monodromy() == M2::identity());
    CHECK(AffineAtlas({-3, 0, 3, 0}).monodromy() == M2::identity());
    auto f = toric_self_ints({{0, -1}, {1, 0}, {0, 1}, {-1, 3}});
    CHECK(AffineAtlas(f).monodromy() == M2::identity());
}

TEST_CASE("non-toric monodromy") {
    M2 m = AffineAtlas({-1, -1, -1}).monodromy();
    CHECK(!(m == M2::identity()));
    CHECK(m.det() == 1);
    // all (-2): a shear fixing a line
    for (int n = 2; n <= 6; ++n) {
        M2 s = AffineAtlas(std::vector<i64>(static_cast<std::size_t>(n), -2)).monodromy();
        CHECK(s.a + s.d == 2);
        CHECK(!(s == M2::identity()));
    }
}

TEST_CASE("transitions are in SL2 and the inverse path undoes transport") {
    std::mt19937 rng(7);
    for (int it = 0; it < 50; ++it) {
        int n = 1 + static_cast<int>(rng() % 6);
        std::vector<i64> s(static_cast<std::size_t>(n));
        for (auto& v : s) v = static_cast<i64>(rng() % 11) - 5;
        AffineAtlas A(s);
        for (int i = 0; i < n; ++i) CHECK(A.transition(i).det() == 1);
        I2 v{static_cast<i64>(rng() % 7) - 3, static_cast<i64>(rng() % 7) - 3};
        int from = static_cast<int>(rng() % static_cast<unsigned>(n));
        int steps = static_cast<int>(rng() % 9) - 4;
        CHECK(A.transport(A.transport(v, from, steps), from + steps, -steps) == v);
        // points on a shared ray agree in both charts
        ChartPoint x{from, V2(Q(0), Q(3))};
        ChartPoint y = A.to_next(x);
        CHECK(A.to_prev(y) == ChartPoint{A.mod(from), x.p});
        CHECK(A.transition(from) * I2{0, 1} == I2{1, 0});
    }
}

TEST_CASE("developing map of the degree one del Pezzo blowup") {
    AffineAtlas A({-3, -1});
    auto w = A.developing_rays({0, -1}, {1, 0}, 6);
    std::vector<I2> expect{{0, -1}, {1, 0}, {1, 1}, {2, 3}, {1, 2}, {1, 3}, {0, 1}};
    CHECK(w == expect);
    // consecutive images stay unimodular while wrapping past a full turn
    for (std::size_t k = 0; k + 1 < w.size(); ++k) CHECK(wedge(w[k], w[k + 1]) == 1);
}

TEST_CASE("developing map of P2 is the fan") {
    AffineAtlas A({1, 1, 1});
    auto w = A.developing_rays({1, 0}, {0, 1}, 3);
    CHECK(w[2] == I2{-1, -1});
    CHECK(w[3] == I2{1, 0});
}

TEST_CASE("negative semidefinite developing image lies in a half plane") {
    for (int n = 2; n <= 6; ++n) {
        AffineAtlas A(std::vector<i64>(static_cast<std::size_t>(n), -2));
        auto w = A.developing_rays({1, 0}, {1, 1}, 40);
        for (auto& v : w) CHECK(v.y >= 0);
    }
}

TEST_CASE("trace_line on P2") {
    AffineAtlas A({1, 1, 1});
    auto L = A.trace_line({0, V2(Q(1), Q(1))}, V2(Q(1), Q(0)));
    CHECK(L.distance == 1);
    CHECK(L.segments.size() <= 2);
    for (auto& s : L.segments) CHECK(wedge(s.entry, s.dir) == L.distance);
    CHECK_THROWS_AS(A.trace_line({0, V2(Q(1), Q(1))}, V2(Q(1), Q(1))), InputError);
}

TEST_CASE("line parallel to a ray on the degree one del Pezzo blowup") {
    AffineAtlas A({-3, -1});
    // L parallel to ray 0 inside cone 1 (rays 1, 0)
    auto L = A.trace_line({1, V2(Q(1), Q(0))}, V2(Q(0), Q(1)));
    CHECK(L.end_parallel_ray == 0);
    CHECK(L.begin_parallel_ray == 0);
    std::set<int> visited;
    for (auto& s : L.segments) visited.insert(s.cone);
    CHECK(visited.size() == 2);
    CHECK(L.segments.size() >= 3);
}

TEST_CASE("wedge invariance and escape on random positive pairs") {
    std::mt19937 rng(23);
    int done = 0;
    while (done < 40) {
        int n = 1 + static_cast<int>(rng() % 6);
        std::vector<i64> s(static_cast<std::size_t>(n));
        for (auto& v : s) v = static_cast<i64>(rng() % 11) - 5;
        if (is_positive(s).status != PositivityStatus::Positive) continue;
        ++done;
        AffineAtlas A(s);
        for (int k = 0; k < 5; ++k) {
            ChartPoint p{static_cast<int>(rng() % static_cast<unsigned>(n)),
                         V2(Q(static_cast<long>(rng() % 5 + 1)), Q(static_cast<long>(rng() % 5)))};
            V2 d(Q(static_cast<long>(rng() % 7) - 3), Q(static_cast<long>(rng() % 7) - 3));
            if (d.is_zero() || sgn(wedge(p.p, d)) == 0) continue;
            auto L = A.trace_line(p, d);
            CHECK(sgn(L.distance) > 0);
            for (auto& seg : L.segments) {
                CHECK(wedge(seg.entry, seg.dir) == L.distance);
                CHECK(wedge(seg.exit, seg.dir) == L.distance);
            }
            CHECK(L.segments.front().inf_begin);
            CHECK(L.segments.back().inf_end);
        }
    }
}
