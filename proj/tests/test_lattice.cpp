#include "doctest.h"
#include "lcy/lattice.hpp"
#include "oracles.hpp"

#include <random>

using namespace lcy;

TEST_CASE("wedge and primitive") {
    CHECK(wedge(I2{1, -1}, I2{-1, -1}) == -2);
    CHECK(wedge(V2(Q(1), Q(-1)), V2(Q(-1), Q(-1))) == -2);
    I2 p = primitive(V2(Q(3, 2), Q(9, 4)));
    CHECK(p == I2{2, 3});
    CHECK(lattice_length(V2(Q(3, 2), Q(9, 4))) == Q(3, 4));
    CHECK_THROWS_AS(primitive(I2{0, 0}), Error);
}

TEST_CASE("lattice points of a triangle") {
    PlanePolygon t{V2(Q(1), Q(2)), V2(Q(-2), Q(-1)), V2(Q(1), Q(-1))};
    auto pts = enumerate_lattice_points(t);
    CHECK(pts.size() == 10);
    CHECK(pts == oracle::box_scan(t));
    auto d = pick_data(t);
    CHECK(d.area == Q(9, 2));
    CHECK(d.boundary == 9);
    CHECK(d.interior == 1);
}

TEST_CASE("scanline agrees with box scan on random convex polygons") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(-40, 40), den(1, 6);
    for (int it = 0; it < 200; ++it) {
        std::vector<V2> pts;
        for (int k = 0; k < 7; ++k) {
            Q x(num(rng), den(rng)), y(num(rng), den(rng));
            x.canonicalize();
            y.canonicalize();
            pts.push_back(V2(x, y));
        }
        auto hull = oracle::convex_hull(pts);
        if (hull.size() < 3) continue;
        CHECK(enumerate_lattice_points(hull) == oracle::box_scan(hull));
    }
}

TEST_CASE("Pick's formula on random lattice polygons") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-15, 15);
    for (int it = 0; it < 200; ++it) {
        std::vector<V2> pts;
        for (int k = 0; k < 6; ++k) pts.push_back(V2(Q(c(rng)), Q(c(rng))));
        auto hull = oracle::convex_hull(pts);
        if (hull.size() < 3) continue;
        auto d = pick_data(hull);
        auto all = oracle::box_scan(hull);
        CHECK(static_cast<i64>(all.size()) == d.interior + d.boundary);
    }
}

TEST_CASE("rational parsing and printing") {
    CHECK(fmt(parse_rational("6/4")) == "3/2");
    CHECK(fmt(parse_rational("-8/4")) == "-2");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
}
