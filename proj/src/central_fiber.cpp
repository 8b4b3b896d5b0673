#include "lcy/central_fiber.hpp"

#include <algorithm>

namespace lcy {

namespace {

Q dot(const I2& u, const V2& x) { return Q(static_cast<long>(u.x)) * x.x + Q(static_cast<long>(u.y)) * x.y; }

Q qabs(const Q& q) { return sgn(q) < 0 ? Q(-q) : q; }

// self and adjacent intersection numbers of the toric boundary curves
struct ToricIntersections {
    std::vector<Q> self;
    std::vector<Q> next; // D_e · D_{e+1}
};

ToricIntersections intersections(const FiberComponent& X) {
    std::size_t m = X.edges.size();
    ToricIntersections t;
    t.self.resize(m);
    t.next.resize(m);
    for (std::size_t e = 0; e < m; ++e) {
        const I2& a = X.edges[(e + m - 1) % m].normal;
        const I2& u = X.edges[e].normal;
        const I2& b = X.edges[(e + 1) % m].normal;
        Q dau(static_cast<long>(wedge(a, u))), dub(static_cast<long>(wedge(u, b))), dab(static_cast<long>(wedge(a, b)));
        t.self[e] = -dab / (dau * dub);
        t.next[e] = 1 / qabs(dub);
    }
    return t;
}

Q pair_product(const ToricIntersections& t, std::size_t m, const std::vector<Q>& x, const std::vector<Q>& y) {
    Q s = 0;
    for (std::size_t e = 0; e < m; ++e) {
        s += x[e] * y[e] * t.self[e];
        std::size_t f = (e + 1) % m;
        s += (x[e] * y[f] + x[f] * y[e]) * t.next[e];
    }
    return s;
}

std::vector<Q> to_q(const std::vector<i64>& v) {
    std::vector<Q> r;
    for (auto x : v) r.push_back(Q(static_cast<long>(x)));
    return r;
}

// vertex of the divisor polytope at the corner between edges e and e+1
V2 corner(const FiberComponent& X, const std::vector<i64>& coeff, std::size_t e) {
    std::size_t m = X.edges.size(), f = (e + 1) % m;
    const I2& u = X.edges[e].normal;
    const I2& w = X.edges[f].normal;
    Q det(static_cast<long>(wedge(u, w)));
    Q r1(static_cast<long>(-coeff[e])), r2(static_cast<long>(-coeff[f]));
    // u.x mx + u.y my = r1 ; w.x mx + w.y my = r2
    Q mx = (r1 * static_cast<long>(w.y) - r2 * static_cast<long>(u.y)) / det;
    Q my = (r2 * static_cast<long>(u.x) - r1 * static_cast<long>(w.x)) / det;
    return V2(mx, my);
}

} // namespace

CentralFiber build_central_fiber(const AffineAtlas& A, const PolygonOnB& F, const std::vector<ImmersedLine>& lines) {
    if (A.n() < 2) throw InputError("central fiber needs n >= 2; blow up the node first");
    if (!F.bounded) throw InputError("polygon is unbounded");
    CentralFiber X;
    X.n = A.n();
    for (int i = 0; i < A.n(); ++i) {
        const auto& poly = F.pieces[static_cast<std::size_t>(i)];
        if (poly.size() < 3 || !poly[0].is_zero()) throw InputError("polygon piece does not contain the origin");
        FiberComponent C;
        C.cone = i;
        C.poly = poly;
        std::size_t m = poly.size();
        for (std::size_t k = 0; k < m; ++k) {
            const V2& a = poly[k];
            const V2& b = poly[(k + 1) % m];
            FiberEdge e;
            e.from = a;
            e.to = b;
            I2 d = primitive(b - a);
            e.normal = I2{-d.y, d.x};
            e.height = -dot(e.normal, a);
            if (k == 0) {
                e.kind = EdgeKind::Gluing;
                e.ray = A.mod(i);
            } else if (k + 1 == m) {
                e.kind = EdgeKind::Gluing;
                e.ray = A.mod(i + 1);
            } else {
                e.kind = EdgeKind::Boundary;
                for (std::size_t l = 0; l < lines.size(); ++l)
                    for (auto& s : lines[l].segments)
                        if (s.cone == i && wedge(a, s.dir) == lines[l].distance && wedge(b, s.dir) == lines[l].distance) {
                            e.lines.push_back(static_cast<int>(l));
                            break;
                        }
                ++X.boundary_curves;
            }
            C.edges.push_back(e);
        }
        for (std::size_t k = 0; k < m; ++k)
            if (std::llabs(wedge(C.edges[k].normal, C.edges[(k + 1) % m].normal)) != 1) C.smooth = false;
        X.components.push_back(C);
    }
    X.gluing_curves = A.n();
    return X;
}

ParallelFiber parallel_fiber(const std::vector<i64>& self_ints, const std::vector<i64>& a) {
    if (self_ints.size() != a.size() || a.empty()) throw InputError("divisor length differs from the boundary length");
    ParallelFiber out;
    if (self_ints.size() == 1) {
        out.self_ints = {self_ints[0] - 4, -1};
        AffineAtlas A(out.self_ints);
        out.lines = {parallel_line(A, 0, Q(static_cast<long>(a[0])))};
        out.polygon = intersect_half_spaces(A, out.lines);
        out.fiber = build_central_fiber(A, out.polygon, out.lines);
        return out;
    }
    out.self_ints = self_ints;
    AffineAtlas A(self_ints);
    out.lines = parallel_lines(A, a);
    out.polygon = intersect_half_spaces(A, out.lines);
    out.fiber = build_central_fiber(A, out.polygon, out.lines);
    return out;
}

std::vector<i64> restricted_coefficients(const FiberComponent& X, const std::set<int>& lines, i64 c) {
    std::vector<i64> r;
    for (auto& e : X.edges) {
        i64 k = 0;
        if (e.kind == EdgeKind::Boundary)
            for (int l : e.lines) k += lines.count(l) ? 1 : 0;
        r.push_back(c * k);
    }
    return r;
}

std::vector<Q> restricted_degrees(const FiberComponent& X, const std::vector<i64>& coeff) {
    auto t = intersections(X);
    std::size_t m = X.edges.size();
    auto d = to_q(coeff);
    std::vector<Q> out;
    for (std::size_t e = 0; e < m; ++e) {
        std::vector<Q> unit(m, Q(0));
        unit[e] = 1;
        out.push_back(pair_product(t, m, d, unit));
    }
    return out;
}

i64 component_chi(const FiberComponent& X, const std::vector<i64>& coeff) {
    std::size_t m = X.edges.size();
    for (std::size_t e = 0; e < m; ++e) {
        V2 v = corner(X, coeff, e);
        if (!v.integral())
            throw InputError("restriction is not Cartier on the component in cone " + std::to_string(X.cone) +
                             " at the corner " + fmt(X.edges[(e + 1) % m].from));
    }
    auto t = intersections(X);
    auto d = to_q(coeff);
    std::vector<Q> minus_k(m, Q(1));
    Q chi = 1 + (pair_product(t, m, d, d) + pair_product(t, m, d, minus_k)) / 2;
    return to_i64(chi);
}

std::optional<i64> component_lattice_count(const FiberComponent& X, const std::vector<i64>& coeff) {
    std::size_t m = X.edges.size();
    for (auto& deg : restricted_degrees(X, coeff))
        if (sgn(deg) < 0) return std::nullopt;
    std::vector<V2> corners;
    for (std::size_t e = 0; e < m; ++e) corners.push_back(corner(X, coeff, e));
    Q x0 = corners[0].x, x1 = x0, y0 = corners[0].y, y1 = y0;
    for (auto& v : corners) {
        x0 = std::min(x0, v.x);
        x1 = std::max(x1, v.x);
        y0 = std::min(y0, v.y);
        y1 = std::max(y1, v.y);
    }
    i64 count = 0;
    for (i64 x = to_i64(Q(ceil_q(x0))); x <= to_i64(Q(floor_q(x1))); ++x)
        for (i64 y = to_i64(Q(ceil_q(y0))); y <= to_i64(Q(floor_q(y1))); ++y) {
            bool in = true;
            for (std::size_t e = 0; e < m && in; ++e) {
                const I2& u = X.edges[e].normal;
                in = u.x * x + u.y * y >= -coeff[e];
            }
            count += in;
        }
    return count;
}

EulerReport euler_characteristic(const CentralFiber& X, const std::set<int>& lines, i64 c) {
    EulerReport R;
    std::vector<std::optional<Q>> glue(static_cast<std::size_t>(X.n));
    i64 lattice_sum = 0;
    for (auto& C : X.components) {
        auto coeff = restricted_coefficients(C, lines, c);
        R.component_chi.push_back(component_chi(C, coeff));
        auto lat = component_lattice_count(C, coeff);
        R.component_lattice.push_back(lat);
        if (!lat)
            R.all_nef = false;
        else
            lattice_sum += *lat;
        auto deg = restricted_degrees(C, coeff);
        for (std::size_t e = 0; e < C.edges.size(); ++e) {
            if (C.edges[e].kind != EdgeKind::Gluing) continue;
            auto& g = glue[static_cast<std::size_t>(C.edges[e].ray)];
            if (g && *g != deg[e]) R.gluing_consistent = false;
            g = deg[e];
        }
    }
    // components in a cycle around the vertex over 0: add them one at a time; the last one meets the
    // union in two curves through that vertex
    i64 overlap = 0;
    for (auto& g : glue) {
        if (!g || g->get_den() != 1) throw InputError("gluing degree is not integral");
        i64 d = to_i64(*g);
        R.gluing_degree.push_back(d);
        overlap += d + 1;
    }
    overlap -= 1;
    R.overlap_chi = overlap;
    i64 total = 0;
    for (auto v : R.component_chi) total += v;
    R.chi = total - overlap;
    if (R.all_nef) R.lattice_chi = lattice_sum - overlap;
    return R;
}

std::vector<BoundaryDegree> toric_period_point(const CentralFiber& X, const std::set<int>& lines, i64 c) {
    std::vector<BoundaryDegree> out;
    for (std::size_t k = 0; k < X.components.size(); ++k) {
        const auto& C = X.components[k];
        auto deg = restricted_degrees(C, restricted_coefficients(C, lines, c));
        for (std::size_t e = 0; e < C.edges.size(); ++e)
            if (C.edges[e].kind == EdgeKind::Boundary && sgn(deg[e]) != 0)
                out.push_back({static_cast<int>(k), static_cast<int>(e), C.edges[e].lines, deg[e]});
    }
    return out;
}

std::vector<Q> line_degrees(const CentralFiber& X, const std::set<int>& lines, i64 c, int num_lines) {
    std::vector<Q> out(static_cast<std::size_t>(num_lines), Q(0));
    for (auto& b : toric_period_point(X, lines, c))
        for (int l : b.lines)
            if (l >= 0 && l < num_lines) out[static_cast<std::size_t>(l)] += b.degree / static_cast<long>(b.lines.size());
    return out;
}

WeightVector boundary_period_weight(const std::vector<i64>& s, int i) {
    int n = static_cast<int>(s.size());
    if (n == 0) throw InputError("empty boundary cycle");
    WeightVector w(static_cast<std::size_t>(n), 0);
    auto md = [n](int k) { return static_cast<std::size_t>(((k % n) + n) % n); };
    if (n == 1) {
        w[0] = s[0];
        return w;
    }
    w[md(i - 1)] += 1;
    w[md(i)] += s[md(i)];
    w[md(i + 1)] += 1;
    return w;
}

} // namespace lcy
