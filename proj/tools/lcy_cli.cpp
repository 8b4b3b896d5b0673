// lcy: command-line front end over the C API.
#include "lcy_c.h"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Owned {
    char* s = nullptr;
    ~Owned() { lcy_string_free(s); }
};

struct PairHandle {
    lcy_pair* p = nullptr;
    ~PairHandle() { lcy_pair_free(p); }
};

struct CycleHandle {
    lcy_cycle* c = nullptr;
    ~CycleHandle() { lcy_cycle_free(c); }
};

int fail(lcy_status s) {
    std::cerr << "error: " << lcy_last_error() << "\n";
    return static_cast<int>(s);
}

// Prints a report and maps the status onto the exit code.
int finish(lcy_status s, const Owned& text) {
    if (s == LCY_OK || s == LCY_NEGATIVE) {
        if (text.s) std::cout << text.s;
        return static_cast<int>(s);
    }
    return fail(s);
}

std::vector<int64_t> parse_list(const std::string& s) {
    std::vector<int64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        out.push_back(v);
    }
    return out;
}

bool parse_point(const std::string& s, int64_t& x, int64_t& y) {
    try {
        auto v = parse_list(s);
        if (v.size() != 2) return false;
        x = v[0];
        y = v[1];
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

bool write_text(const std::string& path, const char* text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) return false;
    f << text;
    return static_cast<bool>(f);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Looijenga pairs: toric models, polygons, theta functions and tropical periods"};
    app.require_subcommand(1);

    std::string file;
    std::string divisor;
    bool use_auto = false;
    std::string svg_path;

    auto* positivity = app.add_subcommand("positivity", "decide whether the pair admits a positive divisor");
    positivity->add_option("file", file, "pair description")->required();

    auto* polygon = app.add_subcommand("polygon", "parallel polygon of a D-ample divisor");
    polygon->add_option("file", file, "pair description")->required();
    auto* pdiv = polygon->add_option("--divisor", divisor, "coefficients a1,..,an");
    polygon->add_flag("--auto", use_auto, "use the parallel configuration")->excludes(pdiv);
    polygon->add_option("--svg", svg_path, "write the developed polygon as SVG");

    std::string tp, tq;
    int order = 0;
    auto* theta = app.add_subcommand("theta", "product expansion theta_p * theta_q");
    theta->add_option("file", file, "pair description")->required();
    theta->add_option("--p", tp, "integral point x,y")->required();
    theta->add_option("--q", tq, "integral point x,y")->required();
    theta->add_option("--order", order, "truncation order in the exceptional classes")->check(CLI::NonNegativeNumber);

    std::vector<int> exc;
    std::string cycle_path;
    auto* periods = app.add_subcommand("periods", "period of an exceptional or given tropical cycle");
    periods->add_option("file", file, "pair description")->required();
    auto* eopt = periods->add_option("--exceptional", exc, "ray i and blowup j (1-based)")->expected(2);
    auto* copt = periods->add_option("--cycle", cycle_path, "tropical cycle file");
    eopt->excludes(copt);
    periods->add_option("--divisor", divisor, "coefficients of the polygon used for exceptional cycles");
    periods->add_option("--svg", svg_path, "write the cycle as SVG");

    bool json = false;
    std::string export_dir;
    auto* dp1 = app.add_subcommand("dp1_e8", "Gram matrix and periods of the E8 root cycles on the dP1 pair");
    dp1->add_flag("--json", json, "machine-readable output");
    dp1->add_option("--export", export_dir, "write the pair file and the eight cycle files into a directory");

    int component = -1;
    auto* fiber = app.add_subcommand("central_fiber", "Euler characteristics of the central fiber components");
    fiber->add_option("file", file, "pair description")->required();
    fiber->add_option("--divisor", divisor, "coefficients a1,..,an (default: parallel configuration)");
    fiber->add_option("--component", component, "fiber component index as printed in the report, all when omitted");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(LCY_INPUT_ERROR);
    }

    std::vector<int64_t> a;
    if (!divisor.empty()) {
        try {
            a = parse_list(divisor);
        } catch (const std::exception&) {
            std::cerr << "error: --divisor expects a comma-separated list of integers\n";
            return LCY_INPUT_ERROR;
        }
    }

    if (*dp1) {
        if (!export_dir.empty()) {
            Owned pj;
            Owned cj[8];
            char** slots[8];
            for (int k = 0; k < 8; ++k) slots[k] = &cj[k].s;
            lcy_status s = lcy_dp1_export(&pj.s, slots);
            if (s != LCY_OK) return fail(s);
            std::filesystem::create_directories(export_dir);
            const char* names[8] = {"betaprime", "beta1", "beta2", "beta3", "beta4", "beta5", "beta6", "beta7"};
            bool ok = write_text(export_dir + "/dp1blowup.json", pj.s);
            for (int k = 0; k < 8; ++k) ok = ok && write_text(export_dir + "/" + names[k] + ".cycle", cj[k].s);
            if (!ok) {
                std::cerr << "error: cannot write into " << export_dir << "\n";
                return LCY_INPUT_ERROR;
            }
            return 0;
        }
        Owned out;
        return finish(lcy_dp1_e8(json ? 1 : 0, &out.s), out);
    }

    PairHandle pair;
    if (lcy_status s = lcy_pair_load(file.c_str(), &pair.p); s != LCY_OK) return fail(s);

    Owned out;
    if (*positivity) return finish(lcy_positivity(pair.p, &out.s), out);

    if (*polygon) {
        if (!use_auto && divisor.empty()) {
            std::cerr << "error: polygon needs --divisor or --auto\n";
            return LCY_INPUT_ERROR;
        }
        Owned svg;
        lcy_status s = lcy_polygon(pair.p, a.data(), a.size(), &out.s, svg_path.empty() ? nullptr : &svg.s);
        int code = finish(s, out);
        if (code <= 1 && !svg_path.empty() && svg.s && !write_text(svg_path, svg.s)) {
            std::cerr << "error: cannot write " << svg_path << "\n";
            return LCY_INPUT_ERROR;
        }
        return code;
    }

    if (*theta) {
        int64_t px, py, qx, qy;
        if (!parse_point(tp, px, py) || !parse_point(tq, qx, qy)) {
            std::cerr << "error: --p and --q must be integral points x,y\n";
            return LCY_INPUT_ERROR;
        }
        return finish(lcy_theta(pair.p, px, py, qx, qy, order, &out.s), out);
    }

    if (*periods) {
        Owned svg;
        char** want = svg_path.empty() ? nullptr : &svg.s;
        lcy_status s;
        if (exc.size() == 2) {
            s = lcy_period_exceptional(pair.p, exc[0], exc[1], a.data(), a.size(), &out.s, want);
        } else if (!cycle_path.empty()) {
            CycleHandle cyc;
            if (lcy_status st = lcy_cycle_load(pair.p, cycle_path.c_str(), &cyc.c); st != LCY_OK) return fail(st);
            s = lcy_period_cycle(pair.p, cyc.c, &out.s, want);
        } else {
            std::cerr << "error: periods needs --exceptional i j or --cycle path\n";
            return LCY_INPUT_ERROR;
        }
        int code = finish(s, out);
        if (code == 0 && svg.s && !write_text(svg_path, svg.s)) {
            std::cerr << "error: cannot write " << svg_path << "\n";
            return LCY_INPUT_ERROR;
        }
        return code;
    }

    if (*fiber) {
        return finish(lcy_central_fiber(pair.p, a.data(), a.size(), component, &out.s), out);
    }
    return 0;
}
