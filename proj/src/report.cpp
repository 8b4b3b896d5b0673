#include "lcy/report.hpp"

#include "lcy/central_fiber.hpp"
#include "lcy/polygon.hpp"
#include "lcy/scattering.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lcy {

namespace {

std::string join(const std::vector<i64>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? sep : "") + std::to_string(v[k]);
    return s;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string title(const LooijengaPair& p) { return p.name().empty() ? "(unnamed)" : p.name(); }

std::string chart_point(const ChartPoint& c) { return "cone " + std::to_string(c.cone) + " " + fmt(c.p); }

} // namespace

Report positivity_report(const LooijengaPair& p) {
    Report r;
    auto res = is_positive(p);
    switch (res.status) {
    case PositivityStatus::Positive:
        r.text = "positive: a = " + join(res.witness) + "\n";
        break;
    case PositivityStatus::NotPositive:
        r.status = 1;
        r.text = "not positive\n";
        break;
    case PositivityStatus::BoundExhausted:
        r.status = 1;
        r.text = "undecided: search bound exhausted, LP point a = " + join(res.witness) + "\n";
        break;
    }
    return r;
}

std::string svg_polygon(const std::vector<i64>& self_ints, const PolygonOnB& F) {
    AffineAtlas A(self_ints);
    int n = A.n();
    auto rays = A.developing_rays(I2{1, 0}, I2{0, 1}, n + 1);
    std::vector<std::vector<V2>> pieces;
    double lo = 0, hi = 0;
    for (int k = 0; k < n; ++k) {
        std::vector<V2> pts;
        for (auto& v : F.pieces[static_cast<std::size_t>(k)]) {
            V2 x = A.develop(k, v, rays);
            pts.push_back(x);
            for (double d : {x.x.get_d(), x.y.get_d()}) {
                lo = std::min(lo, d);
                hi = std::max(hi, d);
            }
        }
        pieces.push_back(pts);
    }
    double span = hi - lo > 0 ? hi - lo : 1, scale = 400 / span;
    auto X = [&](const Q& q) { return 50 + (q.get_d() - lo) * scale; };
    auto Y = [&](const Q& q) { return 450 - (q.get_d() - lo) * scale; };
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"700\" height=\"500\">\n";
    const char* fill[] = {"#d8e6f3", "#f3e2d8", "#dcf0d8", "#efe0f2", "#f2f0cf", "#d8f0ee"};
    for (int k = 0; k < n; ++k) {
        s << "  <polygon fill=\"" << fill[k % 6] << "\" stroke=\"#333\" stroke-width=\"1\" points=\"";
        for (auto& x : pieces[static_cast<std::size_t>(k)]) s << X(x.x) << "," << Y(x.y) << " ";
        s << "\"/>\n";
        V2 c;
        for (auto& x : pieces[static_cast<std::size_t>(k)]) c = c + x;
        c = c * (Q(1) / static_cast<long>(pieces[static_cast<std::size_t>(k)].size()));
        s << "  <text x=\"" << X(c.x) << "\" y=\"" << Y(c.y) << "\" font-size=\"11\">σ" << k << "</text>\n";
    }
    for (int k = 0; k <= n; ++k) {
        V2 e = V2(rays[static_cast<std::size_t>(k)].q()) * F.ray_hits[static_cast<std::size_t>(k % n)];
        s << "  <line x1=\"" << X(Q(0)) << "\" y1=\"" << Y(Q(0)) << "\" x2=\"" << X(e.x) << "\" y2=\"" << Y(e.y)
          << "\" stroke=\"#a00\" stroke-dasharray=\"4 3\"/>\n";
    }
    s << "  <text x=\"480\" y=\"30\" font-size=\"12\">transitions (cone i to i+1)</text>\n";
    for (int k = 0; k < n; ++k) {
        const M2& m = A.transition(k);
        s << "  <text x=\"480\" y=\"" << 50 + 16 * k << "\" font-size=\"11\">T" << k << " = [[" << m.a << "," << m.b << "],["
          << m.c << "," << m.d << "]]</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

Report polygon_report(const LooijengaPair& p, const std::vector<i64>& divisor, bool want_svg) {
    Report r;
    const auto& s = p.self_ints();
    AffineAtlas A(s);
    std::vector<i64> a = divisor;
    std::ostringstream o;
    o << "pair: " << title(p) << "\n";
    if (a.empty()) {
        if (auto pc = find_parallel_configuration(s)) {
            a = *pc;
        } else if (p.n() == 1) {
            a = {1};
        } else {
            r.status = 1;
            r.text = o.str() + "no parallel configuration; pass --divisor\n";
            return r;
        }
    }
    if (a.size() != s.size()) throw InputError("divisor length differs from the boundary length");
    auto deg = divisor_degrees(s, a);
    o << "divisor: a = " << join(a) << "\n";
    o << "W.D_k: " << join(deg) << "\n";
    bool ample = std::all_of(deg.begin(), deg.end(), [](i64 d) { return d > 0; });
    if (!ample) {
        r.status = 1;
        r.text = o.str() + "divisor is not D-ample\n";
        return r;
    }
    for (auto v : a)
        if (v <= 0) throw InputError("divisor entries must be positive");
    auto lines = parallel_lines(A, a);
    auto F = intersect_half_spaces(A, lines);
    auto rep = polygon_checks(s, F, lines, &a);
    o << "vertices: " << F.vertices.size() << "\n";
    for (std::size_t k = 0; k < F.vertices.size(); ++k) o << "  v" << k << ": " << chart_point(F.vertices[k]) << "\n";
    o << "edges:\n";
    for (auto& e : rep.edges) {
        o << "  v" << e.from << " -> v" << e.to << ": dir " << fmt(e.dir) << ", length " << fmt(e.length) << ", lines";
        for (int l : e.lines) o << " L" << l;
        o << "\n";
    }
    o << "ray hits:";
    for (auto& h : F.ray_hits) o << " " << fmt(h);
    o << "\n";
    o << "bounded: " << yes(rep.bounded) << "\nconvex: " << yes(rep.convex) << "\nnonsingular: " << yes(rep.nonsingular)
      << "\nintegral: " << yes(rep.integral) << "\n0-interior: " << yes(rep.zero_interior)
      << "\nsupporting edges: " << yes(rep.supporting_edges) << "\n";
    if (!rep.correct_corner.empty()) {
        o << "correct corners:";
        for (bool b : rep.correct_corner) o << " " << (b ? "yes" : "no");
        o << "\n";
    }
    r.text = o.str();
    if (want_svg) r.svg = svg_polygon(s, F);
    return r;
}

Report theta_report(const LooijengaPair& p, const I2& a, const I2& b, int order) {
    if (order < 0) throw InputError("order must be non-negative");
    PLFunction phi(p);
    ScatteringDiagram D(p, phi, order);
    auto e = theta_product(D, a, b);
    struct Term {
        int order;
        I2 r;
        DivisorClass C;
        Z c;
    };
    std::vector<Term> terms;
    // order 0 is the central fiber: every z^C with C != 0 lies in m
    for (auto& [r, cs] : e)
        for (auto& [C, c] : cs)
            if (order > 0 || std::all_of(C.begin(), C.end(), [](i64 x) { return x == 0; }))
                terms.push_back({static_cast<int>(p.e_degree(C)), r, C, c});
    std::stable_sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
        return x.order != y.order ? x.order < y.order : x.r < y.r;
    });
    std::vector<i64> ones(static_cast<std::size_t>(p.n()), 1);
    auto g = [&](const WeightVector& w) {
        i64 s = 0;
        for (std::size_t k = 0; k < w.size(); ++k) s += ones[k] * w[k];
        return s;
    };
    WeightVector wp = plane_weight(p, a), wq = plane_weight(p, b);
    WeightVector want = wp;
    for (std::size_t k = 0; k < want.size(); ++k) want[k] += wq[k];
    std::ostringstream o;
    o << "theta_" << fmt(a) << " * theta_" << fmt(b) << " to order " << order << (order == 0 ? " (mod m)" : "") << "\n";
    o << "w(p)+w(q) = (" << join(want) << "), g(p)+g(q) = " << g(want) << "\n";
    bool ok = true;
    for (auto& t : terms) {
        WeightVector w = plane_weight(p, t.r), wc = p.weight(t.C);
        for (std::size_t k = 0; k < w.size(); ++k) w[k] += wc[k];
        ok = ok && w == want;
        o << "z^[" << p.format_class(t.C) << "] theta_" << fmt(t.r) << " : " << fmt(t.c) << "    w=(" << join(w)
          << ") g=" << g(w) << "\n";
    }
    if (terms.empty()) o << "(empty expansion)\n";
    o << "terms: " << terms.size() << ", conservation: " << (ok ? "ok" : "VIOLATED") << "\n";
    Report r;
    r.status = ok ? 0 : 1;
    r.text = o.str();
    return r;
}

namespace {

std::string period_block(const LooijengaPair& p, const PeriodMonomial& m) {
    std::ostringstream o;
    o << format_period(p, m) << "\n";
    o << "sign: " << (m.sign < 0 ? "-1" : "+1") << "\n";
    o << "t-exponent (kappa per ray): " << join(m.t_exponent) << "\n";
    o << "class exponent: " << join(m.class_exponent) << "\n";
    return o.str();
}

} // namespace

std::string svg_cycle(const FocusFocusLayout& L, const TropicalCycle& c) {
    auto X = expand(L, c);
    double span = 1;
    for (auto& v : X.vertices) span = std::max({span, std::abs(v.at.x.get_d()), std::abs(v.at.y.get_d())});
    for (int i = 0; i < L.n(); ++i)
        for (int j = 1; j <= L.blowups(i); ++j) {
            V2 o = L.singular_point(i, j);
            span = std::max({span, std::abs(o.x.get_d()), std::abs(o.y.get_d())});
        }
    span *= 1.15;
    double scale = 230 / span;
    auto PX = [&](const Q& q) { return 250 + q.get_d() * scale; };
    auto PY = [&](const Q& q) { return 250 - q.get_d() * scale; };
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"500\" height=\"500\">\n";
    for (int i = 0; i < L.n(); ++i) {
        const I2& r = L.ray(i);
        double len = std::sqrt(static_cast<double>(r.x * r.x + r.y * r.y));
        double ex = 250 + r.x / len * 240, ey = 250 - r.y / len * 240;
        s << "  <line x1=\"250\" y1=\"250\" x2=\"" << ex << "\" y2=\"" << ey << "\" stroke=\"#999\"/>\n";
        s << "  <text x=\"" << ex << "\" y=\"" << ey << "\" font-size=\"11\">ρ" << i + 1 << "</text>\n";
        for (int j = 1; j <= L.blowups(i); ++j) {
            V2 o = L.singular_point(i, j);
            double x = PX(o.x), y = PY(o.y);
            s << "  <path d=\"M" << x - 3 << " " << y - 3 << " L" << x + 3 << " " << y + 3 << " M" << x - 3 << " " << y + 3
              << " L" << x + 3 << " " << y - 3 << "\" stroke=\"#a00\"/>\n";
        }
    }
    for (auto& e : X.edges) {
        const auto& a = X.vertices[static_cast<std::size_t>(e.tail)];
        const auto& b = X.vertices[static_cast<std::size_t>(e.head)];
        s << "  <line x1=\"" << PX(a.at.x) << "\" y1=\"" << PY(a.at.y) << "\" x2=\"" << PX(b.at.x) << "\" y2=\""
          << PY(b.at.y) << "\" stroke=\"#06c\" stroke-width=\"1.5\"/>\n";
        V2 m = (a.at + b.at) * Q(1, 2);
        s << "  <text x=\"" << PX(m.x) + 3 << "\" y=\"" << PY(m.y) - 3 << "\" font-size=\"9\" fill=\"#06c\">"
          << fmt(L.vec_to_plane(e.cone, e.xi)) << "</text>\n";
    }
    for (auto& v : X.vertices)
        if (v.boundary)
            s << "  <circle cx=\"" << PX(v.at.x) << "\" cy=\"" << PY(v.at.y) << "\" r=\"3\" fill=\"#000\"/>\n";
    s << "  <text x=\"10\" y=\"20\" font-size=\"12\">" << c.name << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

Report exceptional_period_report(const LooijengaPair& p, int i, int j, const std::vector<i64>& divisor, bool want_svg) {
    if (i < 1 || i > p.n()) throw InputError("no ray " + std::to_string(i));
    auto L = gs_layout(p);
    auto a = divisor.empty() ? exceptional_divisor(L, i - 1, j) : divisor;
    auto E = exceptional_cycle(L, i - 1, j, a);
    Report r;
    r.text = period_block(p, period(L, E.cycle));
    r.text += "divisor: a = " + join(E.divisor) + ", start cone " + std::to_string(E.start_cone) + ", ray crossings " +
              std::to_string(E.ray_crossings) + "\n";
    if (want_svg) r.svg = svg_cycle(L, E.cycle);
    return r;
}

Report cycle_period_report(const LooijengaPair& p, const TropicalCycle& c, bool want_svg) {
    auto L = gs_layout(p);
    auto B = check_balancing(L, c);
    Report r;
    if (!B.ok) {
        r.status = 1;
        std::ostringstream o;
        o << "unbalanced cycle\n";
        for (auto& [v, res] : B.residuals) {
            if (v >= 0)
                o << "  vertex " << v << ": residual " << fmt(res) << "\n";
            else
                o << "  loop " << (-1 - v) << ": residual " << fmt(res) << "\n";
        }
        for (int e : B.non_primitive) o << "  expanded edge " << e << ": label not primitive\n";
        r.text = o.str();
        return r;
    }
    r.text = period_block(p, period(L, c));
    if (want_svg) r.svg = svg_cycle(L, c);
    return r;
}

Report dp1_e8_report(bool json) {
    auto S = dp1_suite();
    bool match = S.gram == e8_gram();
    bool sym = true;
    for (std::size_t a = 0; a < S.gram.size(); ++a)
        for (std::size_t b = 0; b < S.gram.size(); ++b) sym = sym && S.gram[a][b] == S.gram[b][a];
    std::vector<std::string> names{"beta'"};
    for (int k = 1; k <= 7; ++k) names.push_back("beta^" + std::to_string(k));
    Report r;
    r.status = match ? 0 : 1;
    if (json) {
        nlohmann::ordered_json j;
        j["basis"] = names;
        j["gram"] = S.gram;
        j["matches_e8"] = match;
        j["symmetric"] = sym;
        j["periods"] = nlohmann::ordered_json::array();
        for (auto& m : S.periods) j["periods"].push_back(format_period(S.pair, m));
        r.text = j.dump(2) + "\n";
        return r;
    }
    std::ostringstream o;
    o << "basis: beta', beta^1..beta^7\n";
    for (auto& row : S.gram) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            std::string s = std::to_string(row[k]);
            o << (k ? " " : "") << std::string(s.size() < 2 ? 2 - s.size() : 0, ' ') << s;
        }
        o << "\n";
    }
    o << "periods:\n";
    for (std::size_t k = 0; k < S.periods.size(); ++k) o << "  " << names[k] << ": " << format_period(S.pair, S.periods[k]) << "\n";
    o << "symmetric: " << yes(sym) << "\n";
    o << "matches E8(-1): " << yes(match) << "\n";
    r.text = o.str();
    return r;
}

Report central_fiber_report(const LooijengaPair& p, const std::vector<i64>& divisor, int component) {
    const auto& s = p.self_ints();
    int n = p.n();
    Report r;
    std::vector<i64> a = divisor;
    if (a.empty()) {
        if (auto pc = find_parallel_configuration(s)) {
            a = *pc;
        } else if (n == 1 && s[0] == 1) {
            a = {1};
        } else {
            r.status = 1;
            r.text = "no parallel configuration and not the degree one del Pezzo pair; pass --divisor\n";
            return r;
        }
    }
    auto P = parallel_fiber(s, a);
    std::ostringstream o;
    o << "pair: " << title(p) << "\ndivisor: a = " << join(a) << "\n";
    if (n == 1) o << "node blown up: self-intersections " << join(P.self_ints) << "\n";
    o << "components: " << P.fiber.components.size() << ", boundary curves: " << P.fiber.boundary_curves << "\n";
    if (component >= static_cast<int>(P.fiber.components.size())) throw InputError("no component " + std::to_string(component));
    bool all = true;
    int lines = n == 1 ? 1 : n;
    for (int i = 0; i < lines; ++i) {
        // smallest multiple that is Cartier on every component
        i64 c = 1;
        EulerReport R;
        for (;; ++c) {
            try {
                R = euler_characteristic(P.fiber, {i}, c);
                break;
            } catch (const InputError&) {
                if (c >= 12) throw;
            }
        }
        i64 d2 = s[static_cast<std::size_t>(i)];
        i64 want;
        std::string label;
        if (n == 1) {
            want = 1 + (c * c + c) * d2 / 2;
            label = c == 1 ? "D^2+1" : "1+(c^2+c)D^2/2";
        } else {
            auto w = boundary_period_weight(s, i);
            i64 sw = 0;
            for (auto x : w) sw += x;
            want = 1 + (c * c * d2 + c * sw) / 2;
            label = c == 1 ? "D_i^2+2" : "1+(c^2 D_i^2+c w)/2";
        }
        bool ok = R.chi == want && R.gluing_consistent && (!R.lattice_chi || *R.lattice_chi == R.chi);
        all = all && ok;
        o << "D_" << i << ": c = " << c << ", components";
        for (std::size_t k = 0; k < R.component_chi.size(); ++k) {
            if (component >= 0 && static_cast<int>(k) != component) continue;
            o << " [" << k << "] " << R.component_chi[k];
        }
        o << ", overlap " << R.overlap_chi << ", chi = " << R.chi << ", " << label << " = " << want << " "
          << (ok ? "ok" : "MISMATCH");
        if (R.lattice_chi) o << ", lattice " << *R.lattice_chi;
        o << "\n";
    }
    r.status = all ? 0 : 1;
    r.text = o.str();
    return r;
}

} // namespace lcy
