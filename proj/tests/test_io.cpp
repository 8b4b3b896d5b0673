#include "doctest.h"
#include "fixtures.hpp"
#include "lcy/io.hpp"
#include "lcy/report.hpp"
#include "lcy/scattering.hpp"
#include "lcy_c.h"
#include "scatter_oracle.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

using namespace lcy;

namespace {

std::string data(const std::string& rel) { return std::string(LCY_DATA_DIR) + "/" + rel; }

std::string golden(const std::string& name) {
    return read_file(std::string(LCY_DATA_DIR) + "/../tests/golden/" + name);
}

std::string parse_message(const std::string& text) {
    try {
        read_pair(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("pair files round trip byte-identically") {
    for (auto name : {"p2", "cubic", "allminus2", "p1xp1", "dp1", "dp1blowup"}) {
        auto p = load_pair(data(std::string("pairs/") + name + ".json"));
        auto once = write_pair(p);
        auto q = read_pair(once);
        CHECK(write_pair(q) == once);
        CHECK(q.self_ints() == p.self_ints());
        CHECK(q.name() == p.name());
    }
    std::mt19937 rng(7);
    for (int t = 0; t < 40; ++t) {
        auto p = fixture::random_positive_pair(rng, 5, 3, 4);
        auto s = write_pair(p);
        auto q = read_pair(s);
        CHECK(write_pair(q) == s);
        CHECK(q.self_ints() == p.self_ints());
        CHECK(q.charge() == p.charge());
    }
}

TEST_CASE("shipped pairs have the expected boundary") {
    CHECK(load_pair(data("pairs/p2.json")).self_ints() == std::vector<i64>{1, 1, 1});
    CHECK(load_pair(data("pairs/cubic.json")).self_ints() == std::vector<i64>{-1, -1, -1});
    CHECK(load_pair(data("pairs/allminus2.json")).self_ints() == std::vector<i64>{-2, -2, -2, -2});
    CHECK(load_pair(data("pairs/p1xp1.json")).self_ints() == std::vector<i64>{0, 0, 0, 0});
    CHECK(load_pair(data("pairs/dp1.json")).self_ints() == std::vector<i64>{1});
}

TEST_CASE("cycle files reproduce the root cycles") {
    auto S = dp1_suite();
    auto p = load_pair(data("pairs/dp1blowup.json"));
    CHECK(write_pair(p) == write_pair(S.pair));
    auto L = gs_layout(p);
    const char* names[8] = {"betaprime", "beta1", "beta2", "beta3", "beta4", "beta5", "beta6", "beta7"};
    for (std::size_t k = 0; k < 8; ++k) {
        auto text = read_file(data(std::string("cycles/") + names[k] + ".cycle"));
        auto c = read_cycle(L, text);
        CHECK(write_cycle(L, c) == text);
        CHECK(check_balancing(L, c).ok);
        auto m = period(L, c);
        CHECK(m.sign == S.periods[k].sign);
        CHECK(m.t_exponent == S.periods[k].t_exponent);
        CHECK(m.class_exponent == S.periods[k].class_exponent);
        for (std::size_t l = 0; l < 8; ++l) CHECK(tropical_intersection(L, c, S.cycles[l]) == S.gram[k][l]);
    }
}

TEST_CASE("exceptional cycles survive a write/read cycle") {
    std::mt19937 rng(19);
    int done = 0;
    for (int t = 0; t < 30 && done < 10; ++t) {
        auto p = fixture::random_positive_pair(rng, 4, 2, 3);
        auto L = gs_layout(p);
        for (int i = 0; i < p.n(); ++i)
            for (int j = 1; j <= p.toric_model().blowups[static_cast<std::size_t>(i)]; ++j) {
                auto E = exceptional_cycle(L, i, j, exceptional_divisor(L, i, j));
                auto back = read_cycle(L, write_cycle(L, E.cycle));
                auto a = period(L, E.cycle), b = period(L, back);
                CHECK(a.class_exponent == b.class_exponent);
                CHECK(a.t_exponent == b.t_exponent);
                CHECK(tropical_intersection(L, back, back) == -1);
                ++done;
            }
    }
    CHECK(done > 0);
}

TEST_CASE("malformed JSON reports line and column") {
    auto msg = parse_message("{\n  \"fan_rays\": [[1, 0], [0, 1],\n  \"blowups_per_ray\": [0, 0, 0]\n}\n");
    CHECK(msg.find("line 3, column") == 0);
    CHECK(parse_message("").find("line 1, column 1") == 0);
    msg = parse_message("{\"fan_rays\": [[1,0],[0,1],[-1,-1]],\n \"blowups_per_ray\": [0,0,0],,}");
    CHECK(msg.find("line 2, column") == 0);
}

TEST_CASE("schema violations are input errors") {
    auto bad = [](const std::string& text) {
        CHECK_THROWS_AS(read_pair(text), InputError);
    };
    bad("[]");
    bad(R"({"fan_rays": [[1,0],[0,1],[-1,-1]]})");
    bad(R"({"fan_rays": [[1,0],[0,1],[-1,-1]], "blowups_per_ray": [0,0]})");
    bad(R"({"fan_rays": [[1,0],[0,1],[-1,-1]], "blowups_per_ray": [0,0,-1]})");
    bad(R"({"fan_rays": [[1,0],[0,1],[-1,-1]], "blowups_per_ray": [0,0,0], "colour": 1})");
    bad(R"({"fan_rays": [[1,0],[0,1],[-1]], "blowups_per_ray": [0,0,0]})");
    bad(R"({"fan_rays": [[1,0],[0,1],[-1,-1.5]], "blowups_per_ray": [0,0,0]})");
    bad(R"({"fan_rays": [[1,0],[0,1],[1,1]], "blowups_per_ray": [0,0,0]})");
    bad(R"({"self_ints": [1], "fan_rays": [[1,0]]})");
    auto L = gs_layout(load_pair(data("pairs/dp1blowup.json")));
    CHECK_THROWS_AS(read_cycle(L, R"({"vertices": [], "edges": [{"tail": 0, "head": 1, "vector": [1,0]}]})"), InputError);
    CHECK_THROWS_AS(read_cycle(L, R"({"vertices": [{"cone": 9, "at": ["1","1"], "boundary": false}]})"), InputError);
    CHECK_THROWS_AS(read_cycle(L, R"({"vertices": [{"cone": 0, "at": ["1/0","1"], "boundary": false}]})"), InputError);
}

TEST_CASE("C API handles, statuses and errors") {
    lcy_pair* p = nullptr;
    REQUIRE(lcy_pair_load(data("pairs/cubic.json").c_str(), &p) == LCY_OK);
    CHECK(lcy_pair_n(p) == 3);
    int64_t s[3] = {0, 0, 0};
    CHECK(lcy_pair_self_ints(p, s, 3) == LCY_OK);
    CHECK(s[0] == -1);

    char* out = nullptr;
    CHECK(lcy_positivity(p, &out) == LCY_OK);
    CHECK(std::string(out) == "positive: a = 1,1,1\n");
    lcy_string_free(out);

    CHECK(lcy_period_exceptional(p, 1, 1, nullptr, 0, &out, nullptr) == LCY_OK);
    CHECK(std::string(out).rfind("+ z^[E_{11}]\n", 0) == 0);
    lcy_string_free(out);

    CHECK(lcy_period_exceptional(p, 7, 1, nullptr, 0, &out, nullptr) == LCY_INPUT_ERROR);
    CHECK(std::string(lcy_last_error()).find("no ray") != std::string::npos);

    int64_t bad[3] = {1, 3, 1};
    out = nullptr;
    CHECK(lcy_polygon(p, bad, 3, &out, nullptr) == LCY_NEGATIVE);
    CHECK(std::string(out).find("not D-ample") != std::string::npos);
    lcy_string_free(out);

    char* json = nullptr;
    CHECK(lcy_pair_write(p, &json) == LCY_OK);
    lcy_pair* q = nullptr;
    CHECK(lcy_pair_parse(json, &q) == LCY_OK);
    char* json2 = nullptr;
    CHECK(lcy_pair_write(q, &json2) == LCY_OK);
    CHECK(std::string(json) == json2);
    lcy_string_free(json);
    lcy_string_free(json2);
    lcy_pair_free(q);
    lcy_pair_free(p);

    lcy_pair* broken = nullptr;
    CHECK(lcy_pair_parse("{\"fan_rays\": ", &broken) == LCY_INPUT_ERROR);
    CHECK(broken == nullptr);
    CHECK(std::string(lcy_last_error()).find("line 1, column") == 0);
    CHECK(lcy_pair_load("/nonexistent/pair.json", &broken) == LCY_INPUT_ERROR);
    CHECK(lcy_positivity(nullptr, &out) == LCY_INPUT_ERROR);

    lcy_pair* d = nullptr;
    REQUIRE(lcy_pair_load(data("pairs/dp1blowup.json").c_str(), &d) == LCY_OK);
    lcy_cycle* c = nullptr;
    REQUIRE(lcy_cycle_load(d, data("cycles/beta1.cycle").c_str(), &c) == LCY_OK);
    CHECK(lcy_period_cycle(d, c, &out, nullptr) == LCY_OK);
    CHECK(std::string(out).rfind("+ z^[E_1 - E_2]\n", 0) == 0);
    lcy_string_free(out);
    lcy_cycle_free(c);
    lcy_pair_free(d);

    CHECK(lcy_dp1_e8(0, &out) == LCY_OK);
    CHECK(std::string(out).find("matches E8(-1): yes") != std::string::npos);
    lcy_string_free(out);
}

TEST_CASE("unbalanced cycles are reported with residuals") {
    auto S = dp1_suite();
    auto c = S.cycles[1];
    c.edges[0].xi = c.edges[0].xi * 2;
    auto r = cycle_period_report(S.pair, c);
    CHECK(r.status == 1);
    CHECK(r.text.find("residual") != std::string::npos);
}

TEST_CASE("cubic theta golden file agrees with the bend-pattern oracle") {
    auto p = load_pair(data("pairs/cubic.json"));
    const int order = 2;
    const I2 P{1, 0}, Qp{-1, -1};
    PLFunction phi(p);
    ScatteringDiagram D(p, phi, order);
    auto walls = oracle::to_oracle(D.walls());
    oracle::Truncation t{p.n() - 2, order};
    auto rank = static_cast<std::size_t>(p.pic_rank());

    std::set<std::string> want;
    for (i64 x = -4; x <= 4; ++x)
        for (i64 y = -4; y <= 4; ++y) {
            I2 r{x, y};
            auto shift = phi(P) + phi(Qp) - phi(r);
            for (auto& [C, c] : oracle::pair_count(walls, t, rank, P, Qp, r, generic_endpoint(D, r, 0), shift, 4)) {
                std::ostringstream o;
                o << "z^[" << p.format_class(C) << "] theta_" << fmt(r) << " : " << c.get_str();
                want.insert(o.str());
            }
        }

    std::set<std::string> got;
    std::istringstream in(golden("theta_cubic_order2.txt"));
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("z^[", 0) == 0) got.insert(line.substr(0, line.find("    w=")));
    CHECK(got.size() == 8);
    CHECK(got == want);
}

TEST_CASE("cycle SVG draws every expanded edge and singular point") {
    auto S = dp1_suite();
    for (auto& c : S.cycles) {
        auto svg = svg_cycle(S.layout, c);
        auto count = [&](const std::string& needle) {
            std::size_t k = 0, at = 0;
            while ((at = svg.find(needle, at)) != std::string::npos) ++k, ++at;
            return k;
        };
        CHECK(count("stroke=\"#06c\" stroke-width") == expand(S.layout, c).edges.size());
        CHECK(count("stroke=\"#a00\"") == 10);
        CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
    }
}
