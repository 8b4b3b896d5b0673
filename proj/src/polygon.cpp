#include "lcy/polygon.hpp"

#include "lcy/pair_model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace lcy {

Q clip_bound() { return Q(Z(1) << 40); }

namespace {

PlanePolygon cleanup(const PlanePolygon& in) {
    PlanePolygon p;
    for (auto& v : in)
        if (p.empty() || p.back() != v) p.push_back(v);
    while (p.size() > 1 && p.front() == p.back()) p.pop_back();
    bool changed = true;
    while (changed && p.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const V2& a = p[(i + p.size() - 1) % p.size()];
            const V2& b = p[i];
            const V2& c = p[(i + 1) % p.size()];
            if (sgn(wedge(b - a, c - b)) == 0) {
                p.erase(p.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return p;
}

// keep dist - wedge(x, d) >= 0
PlanePolygon clip(const PlanePolygon& poly, const V2& d, const Q& dist) {
    PlanePolygon out;
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const V2& P = poly[i];
        const V2& R = poly[(i + 1) % n];
        Q fp = dist - wedge(P, d), fr = dist - wedge(R, d);
        if (sgn(fp) >= 0) out.push_back(P);
        if ((sgn(fp) > 0 && sgn(fr) < 0) || (sgn(fp) < 0 && sgn(fr) > 0)) {
            Q t = fp / (fp - fr);
            out.push_back(P + (R - P) * t);
        }
    }
    return cleanup(out);
}

struct SubSeg {
    int cone;
    V2 from, to;
    bool first; // starts on the ray shared with the previous piece
};

std::vector<SubSeg> outer_segments(const PolygonOnB& F) {
    std::vector<SubSeg> segs;
    for (int i = 0; i < F.n; ++i) {
        const auto& p = F.pieces[static_cast<std::size_t>(i)];
        for (std::size_t k = 1; k + 1 < p.size(); ++k) segs.push_back({i, p[k], p[k + 1], k == 1});
    }
    return segs;
}

bool on_line(const ImmersedLine& L, int cone, const V2& a, const V2& b) {
    for (auto& s : L.segments) {
        if (s.cone != cone) continue;
        if (wedge(a, s.dir) == L.distance && wedge(b, s.dir) == L.distance) return true;
    }
    return false;
}

} // namespace

bool PolygonReport::all() const {
    bool ok = bounded && convex && nonsingular && integral && zero_interior && supporting_edges;
    for (bool c : correct_corner) ok = ok && c;
    return ok;
}

ImmersedLine parallel_line(const AffineAtlas& A, int k, const Q& a) {
    if (sgn(a) <= 0) throw InputError("parallel line needs positive distance");
    return A.trace_line({A.mod(k - 1), V2(a, Q(0))}, V2(Q(0), Q(1)));
}

std::vector<ImmersedLine> parallel_lines(const AffineAtlas& A, const std::vector<i64>& a) {
    if (static_cast<int>(a.size()) != A.n()) throw InputError("divisor length differs from the boundary length");
    std::vector<ImmersedLine> lines;
    for (int k = 0; k < A.n(); ++k) lines.push_back(parallel_line(A, k, Q(static_cast<long>(a[static_cast<std::size_t>(k)]))));
    return lines;
}

PolygonOnB intersect_half_spaces(const AffineAtlas& A, const std::vector<ImmersedLine>& lines) {
    PolygonOnB F;
    F.n = A.n();
    Q B = clip_bound();
    for (int i = 0; i < F.n; ++i) {
        PlanePolygon p{V2(Q(0), Q(0)), V2(B, Q(0)), V2(B, B), V2(Q(0), B)};
        for (auto& L : lines) {
            if (sgn(L.distance) <= 0) throw InputError("half space through the origin");
            for (auto& s : L.segments)
                if (s.cone == i) p = clip(p, s.dir, L.distance);
        }
        if (p.size() < 3) throw Error("half space intersection has empty interior");
        auto it = std::find(p.begin(), p.end(), V2(Q(0), Q(0)));
        if (it == p.end()) throw Error("origin not a corner of a cone piece");
        std::rotate(p.begin(), it, p.end());
        for (auto& v : p)
            if (v.x == B || v.y == B) F.bounded = false;
        F.pieces.push_back(p);
    }
    F.ray_hits.resize(static_cast<std::size_t>(F.n));
    for (int i = 0; i < F.n; ++i) {
        const auto& p = F.pieces[static_cast<std::size_t>(i)];
        const auto& prev = F.pieces[static_cast<std::size_t>(A.mod(i - 1))];
        Q r = p[1].x;
        if (sgn(p[1].y) != 0 || prev.back().x != 0 || prev.back().y != r)
            throw Error("cone pieces disagree on ray " + std::to_string(i));
        F.ray_hits[static_cast<std::size_t>(i)] = r;
    }
    auto segs = outer_segments(F);
    for (std::size_t k = 0; k < segs.size(); ++k) {
        const SubSeg& s = segs[k];
        const SubSeg& prev = segs[(k + segs.size() - 1) % segs.size()];
        F.chain.push_back({s.cone, s.from});
        bool bend;
        if (!s.first) {
            bend = true;
        } else {
            V2 din = A.transition(prev.cone) * (prev.to - prev.from);
            bend = sgn(wedge(din, s.to - s.from)) != 0;
        }
        if (bend) {
            F.vertices.push_back({s.cone, s.from});
            F.vertex_pos.push_back(static_cast<int>(k));
        }
    }
    return F;
}

PolygonOnB parallel_polygon(const std::vector<i64>& self_ints, const std::vector<i64>& a) {
    if (a.size() != self_ints.size()) throw InputError("divisor length differs from the boundary length");
    for (auto v : a)
        if (v <= 0) throw InputError("divisor coefficients must be positive");
    for (auto v : divisor_degrees(self_ints, a))
        if (v <= 0) throw InputError("W is not D-ample");
    AffineAtlas A(self_ints);
    return intersect_half_spaces(A, parallel_lines(A, a));
}

std::vector<PolygonEdge> polygon_edges(const AffineAtlas& A, const PolygonOnB& F,
                                       const std::vector<ImmersedLine>& lines) {
    auto segs = outer_segments(F);
    std::vector<PolygonEdge> edges;
    std::size_t nv = F.vertices.size();
    if (nv == 0) return edges;
    for (std::size_t v = 0; v < nv; ++v) {
        PolygonEdge e;
        e.from = static_cast<int>(v);
        e.to = static_cast<int>((v + 1) % nv);
        std::size_t k0 = static_cast<std::size_t>(F.vertex_pos[v]);
        std::size_t k1 = static_cast<std::size_t>(F.vertex_pos[(v + 1) % nv]);
        if (k1 <= k0) k1 += segs.size();
        e.dir = primitive(segs[k0].to - segs[k0].from);
        e.length = 0;
        std::set<int> sup;
        for (std::size_t k = k0; k < k1; ++k) {
            const SubSeg& s = segs[k % segs.size()];
            e.length += lattice_length(s.to - s.from);
            for (std::size_t j = 0; j < lines.size(); ++j)
                if (on_line(lines[j], s.cone, s.from, s.to)) sup.insert(static_cast<int>(j));
        }
        e.lines.assign(sup.begin(), sup.end());
        edges.push_back(e);
    }
    (void)A;
    return edges;
}

PolygonReport polygon_checks(const std::vector<i64>& self_ints, const PolygonOnB& F,
                             const std::vector<ImmersedLine>& lines, const std::vector<i64>* a) {
    AffineAtlas A(self_ints);
    PolygonReport r;
    r.bounded = F.bounded;
    r.zero_interior = std::all_of(F.ray_hits.begin(), F.ray_hits.end(), [](const Q& q) { return sgn(q) > 0; });
    if (a) r.nef = divisor_degrees(self_ints, *a);
    if (!F.bounded) {
        if (a) r.correct_corner.assign(static_cast<std::size_t>(F.n), false);
        return r;
    }
    auto segs = outer_segments(F);
    r.integral = std::all_of(F.vertices.begin(), F.vertices.end(), [](const ChartPoint& x) { return x.p.integral(); });
    r.convex = true;
    r.nonsingular = true;
    for (std::size_t v = 0; v < F.vertices.size(); ++v) {
        std::size_t k = static_cast<std::size_t>(F.vertex_pos[v]);
        const SubSeg& s = segs[k];
        const SubSeg& prev = segs[(k + segs.size() - 1) % segs.size()];
        V2 din = prev.to - prev.from;
        if (s.first) din = A.transition(prev.cone) * din;
        V2 dout = s.to - s.from;
        if (sgn(wedge(din, dout)) <= 0) r.convex = false;
        if (std::abs(wedge(primitive(din), primitive(dout))) != 1) r.nonsingular = false;
    }
    r.edges = polygon_edges(A, F, lines);
    std::vector<bool> supported(lines.size(), false);
    for (auto& e : r.edges)
        for (int j : e.lines) supported[static_cast<std::size_t>(j)] = true;
    r.supporting_edges = std::all_of(supported.begin(), supported.end(), [](bool b) { return b; });
    if (a) {
        r.correct_corner.assign(static_cast<std::size_t>(F.n), false);
        for (int i = 0; i < F.n; ++i) {
            std::vector<V2> inner;
            for (auto& x : F.chain)
                if (x.cone == i && sgn(x.p.x) > 0 && sgn(x.p.y) > 0) inner.push_back(x.p);
            i64 a1 = (*a)[static_cast<std::size_t>(A.mod(i + 1))];
            i64 a2 = (*a)[static_cast<std::size_t>(A.mod(i + 2))];
            V2 corner(Q(static_cast<long>(a1)), Q(static_cast<long>(a2 + A.dt(i + 1) * a1)));
            r.correct_corner[static_cast<std::size_t>(i)] = inner.size() == 1 && inner[0] == corner;
        }
    }
    return r;
}

bool point_in_polygon(const PolygonOnB& F, const ChartPoint& x) {
    int c = ((x.cone % F.n) + F.n) % F.n;
    const auto& p = F.pieces[static_cast<std::size_t>(c)];
    if (sgn(x.p.x) < 0 || sgn(x.p.y) < 0) return false;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (sgn(wedge(p[(i + 1) % p.size()] - p[i], x.p - p[i])) < 0) return false;
    return true;
}

std::optional<std::vector<i64>> find_parallel_configuration(const std::vector<i64>& s) {
    int n = static_cast<int>(s.size());
    if (n == 0) throw InputError("empty boundary cycle");
    if (n == 1) {
        if (s[0] >= 2) return std::vector<i64>{1};
        return std::nullopt;
    }
    int start = -1;
    for (int i = 0; i < n; ++i)
        if (s[static_cast<std::size_t>(i)] >= 0) {
            start = i;
            break;
        }
    if (start < 0) return std::nullopt;
    std::vector<i64> a(static_cast<std::size_t>(n), 0);
    auto at = [&](int i) -> i64& { return a[static_cast<std::size_t>(((i % n) + n) % n)]; };
    auto d2 = [&](int i) { return s[static_cast<std::size_t>(((i % n) + n) % n)]; };
    at(start + 1) = 1;
    for (int i = start + 1; i < start + n; ++i) at(i + 1) = d2(i) >= 0 ? 1 : -d2(i) * at(i) + 1;
    return a;
}

Q height(const std::vector<i64>& a, const ChartPoint& q) {
    int n = static_cast<int>(a.size());
    int i = ((q.cone % n) + n) % n;
    return q.p.x * Q(static_cast<long>(a[static_cast<std::size_t>(i)])) +
           q.p.y * Q(static_cast<long>(a[static_cast<std::size_t>((i + 1) % n)]));
}

std::vector<GradedElement> graded_basis(const AffineAtlas& A, const PolygonOnB& F, int M) {
    if (!F.bounded) throw InputError("graded basis needs a bounded polygon");
    std::vector<GradedElement> out;
    for (int m = 0; m <= M; ++m) {
        std::set<std::tuple<int, V2>> seen;
        std::vector<ChartPoint> pts;
        if (m == 0) {
            pts.push_back({0, V2()});
        } else {
            for (int i = 0; i < F.n; ++i) {
                PlanePolygon scaled;
                for (auto& v : F.pieces[static_cast<std::size_t>(i)]) scaled.push_back(v * Q(m));
                for (auto& z : enumerate_lattice_points(scaled)) {
                    ChartPoint c = A.canonical({i, z.q()});
                    if (seen.insert({c.cone, c.p}).second) pts.push_back(c);
                }
            }
        }
        std::sort(pts.begin(), pts.end(), [](const ChartPoint& x, const ChartPoint& y) {
            return x.cone < y.cone || (x.cone == y.cone && x.p < y.p);
        });
        for (auto& c : pts) out.push_back({c, m});
    }
    return out;
}

} // namespace lcy
