#include "lcy/tropical.hpp"

#include "lcy/central_fiber.hpp"

#include <algorithm>
#include <numeric>

namespace lcy {

namespace {

Q qi(i64 v) { return Q(static_cast<long>(v)); }

V2 times(const I2& v, const Q& t) { return V2(qi(v.x) * t, qi(v.y) * t); }

I2 add(const I2& a, const I2& b) { return I2{a.x + b.x, a.y + b.y}; }
I2 sub(const I2& a, const I2& b) { return I2{a.x - b.x, a.y - b.y}; }
I2 mul(i64 s, const I2& a) { return I2{s * a.x, s * a.y}; }

Q dotq(const V2& a, const V2& b) { return a.x * b.x + a.y * b.y; }

Q signed_area(const std::vector<V2>& p) {
    Q s = 0;
    for (std::size_t k = 0; k < p.size(); ++k) s += wedge(p[k], p[(k + 1) % p.size()]);
    return s;
}

Q qmax(const Q& a, const Q& b) { return a < b ? b : a; }
Q qmin(const Q& a, const Q& b) { return a < b ? a : b; }
Q qabs(const Q& a) { return sgn(a) < 0 ? Q(-a) : a; }

SlabFunction slab_times(const SlabFunction& a, const SlabFunction& b) {
    SlabFunction r;
    for (auto& [ka, ca] : a)
        for (auto& [kb, cb] : b) r[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
    SlabFunction out;
    for (auto& [k, v] : r)
        if (v != 0) out[k] = v;
    return out;
}

SlabFunction shifted(const SlabFunction& f, i64 x, const DivisorClass& c) {
    SlabFunction r;
    for (auto& [k, v] : f) r[{k.first + x, k.second + c}] = v;
    return r;
}

std::string cyc_err(const std::string& what) { return "tropical cycle: " + what; }

} // namespace

FocusFocusLayout::FocusFocusLayout(const LooijengaPair& p, std::vector<std::vector<Q>> radii)
    : pair_(p), rays_(p.toric_model().rays), radii_(std::move(radii)) {
    int n = p.n();
    if (static_cast<int>(radii_.size()) != n) throw InputError("one radius list per ray expected");
    const auto& l = p.toric_model().blowups;
    slabs_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& r = radii_[static_cast<std::size_t>(i)];
        if (static_cast<int>(r.size()) != l[static_cast<std::size_t>(i)])
            throw InputError("ray " + std::to_string(i + 1) + " needs " + std::to_string(l[static_cast<std::size_t>(i)]) +
                             " singular points");
        std::vector<Q> sorted = r;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 0; k < sorted.size(); ++k) {
            if (sgn(sorted[k]) <= 0) throw InputError("singular points must lie at positive radius");
            if (k > 0 && sorted[k] == sorted[k - 1])
                throw InputError("colliding singular points on ray " + std::to_string(i + 1) + " at radius " + fmt(sorted[k]));
        }
        for (std::size_t s = 0; s <= sorted.size(); ++s) {
            Slab S;
            S.ray = i;
            S.index = static_cast<int>(s);
            S.inner = s == 0 ? Q(0) : sorted[s - 1];
            S.outer = s == sorted.size() ? Q(-1) : sorted[s];
            S.kink = p.boundary(i);
            S.f[{0, p.zero()}] = 1;
            for (std::size_t k = 0; k < r.size(); ++k) {
                DivisorClass E = p.exc(i, static_cast<int>(k));
                SlabFunction g;
                g[{0, p.zero()}] = 1;
                if (r[k] > S.inner) {
                    // o_ik further out: 1 + z^{-E} X
                    S.kink = S.kink + E;
                    g[{1, p.zero() - E}] = 1;
                } else {
                    g[{-1, E}] = 1;
                }
                S.f = slab_times(S.f, g);
            }
            slabs_[static_cast<std::size_t>(i)].push_back(S);
        }
    }
}

V2 FocusFocusLayout::singular_point(int i, int j) const {
    const auto& r = radii(i);
    if (j < 1 || j > static_cast<int>(r.size())) throw InputError("no singular point " + std::to_string(j) + " on ray " + std::to_string(mod(i) + 1));
    return times(ray(i), r[static_cast<std::size_t>(j - 1)]);
}

Q FocusFocusLayout::loop_size(int i, int j) const {
    const auto& r = radii(i);
    Q t = r[static_cast<std::size_t>(j - 1)];
    Q gap = t;
    for (auto& s : r)
        if (s != t) gap = qmin(gap, qabs(s - t));
    return gap / 3;
}

int FocusFocusLayout::slab_of(int i, const Q& radius) const {
    int s = 0;
    for (auto& r : radii(i)) {
        if (r == radius) throw InputError("point lies on the singular point of ray " + std::to_string(mod(i) + 1) + " at radius " + fmt(r));
        if (r < radius) ++s;
    }
    return s;
}

FocusFocusLayout::Place FocusFocusLayout::locate(const V2& x) const {
    if (x.is_zero()) throw InputError(cyc_err("vertex at the origin"));
    for (int k = 0; k < n(); ++k) {
        V2 v = ray(k).q(), w = ray(k + 1).q();
        Q a = wedge(v, x), b = wedge(x, w);
        if (sgn(a) == 0 && sgn(dotq(v, x)) > 0) return {k, k, dotq(v, x) / dotq(v, v)};
        if (sgn(a) > 0 && sgn(b) > 0) return {k, -1, Q(0)};
    }
    throw Error("point not located in the fan");
}

I2 FocusFocusLayout::cross(int i, int slab, const I2& m, bool ccw) const {
    const I2& v = ray(i);
    i64 w = wedge(v, m) * slab;
    return ccw ? sub(m, mul(w, v)) : add(m, mul(w, v));
}

V2 FocusFocusLayout::to_plane(int cone, const V2& bc) const { return times(ray(cone), bc.x) + times(ray(cone + 1), bc.y); }

V2 FocusFocusLayout::to_cone(int cone, const V2& x) const { return V2(wedge(x, ray(cone + 1).q()), wedge(ray(cone).q(), x)); }

I2 FocusFocusLayout::vec_to_plane(int cone, const I2& bc) const { return add(mul(bc.x, ray(cone)), mul(bc.y, ray(cone + 1))); }

I2 FocusFocusLayout::vec_to_cone(int cone, const I2& x) const { return I2{wedge(x, ray(cone + 1)), wedge(ray(cone), x)}; }

FocusFocusLayout gs_layout(const LooijengaPair& p, const std::optional<std::vector<std::vector<Q>>>& radii) {
    if (!p.has_toric_model()) throw InputError("the focus-focus layout needs a toric model");
    if (radii) return FocusFocusLayout(p, *radii);
    std::vector<std::vector<Q>> r;
    for (int l : p.toric_model().blowups) {
        std::vector<Q> row;
        for (int j = 1; j <= l; ++j) row.push_back(Q(j) / (l + 1));
        r.push_back(row);
    }
    return FocusFocusLayout(p, r);
}

bool check_compatibility(const FocusFocusLayout& L) {
    for (int i = 0; i < L.n(); ++i) {
        const auto& S = L.slabs(i);
        for (std::size_t a = 0; a < S.size(); ++a)
            for (std::size_t b = 0; b < S.size(); ++b) {
                auto lhs = shifted(S[b].f, 0, S[b].kink);
                auto rhs = shifted(S[a].f, static_cast<i64>(a) - static_cast<i64>(b), S[a].kink);
                if (lhs != rhs) return false;
            }
    }
    return true;
}

I2 monodromy(const FocusFocusLayout& L, int ray, int j, int j2, const I2& m) {
    for (int s : {j, j2})
        if (s < 0 || s > L.blowups(ray)) throw InputError("no slab " + std::to_string(s) + " on ray " + std::to_string(L.mod(ray) + 1));
    return L.cross(ray, j, L.cross(ray, j2, m, true), false);
}

namespace {

struct LoopShape {
    std::vector<V2> pts; // P1, Bp, P2
    std::vector<I2> labels; // arcs J-P1, P1-Bp, Bp-P2, P2-J
    int junction_cone = 0, other_cone = 0;
    I2 net;
};

LoopShape loop_shape(const FocusFocusLayout& L, const FocusLoop& lp, const V2& J) {
    int i = L.mod(lp.ray);
    auto place = L.locate(J);
    int before = L.mod(i - 1);
    if (place.ray >= 0 || (place.cone != before && place.cone != i))
        throw InputError(cyc_err("loop junction must lie inside a cone next to ray " + std::to_string(i + 1)));
    if (lp.orientation != 1 && lp.orientation != -1) throw InputError(cyc_err("loop orientation must be +1 or -1"));
    V2 o = L.singular_point(i, lp.singularity);
    Q h = L.loop_size(i, lp.singularity);
    V2 inner = o - times(L.ray(i), h), outer = o + times(L.ray(i), h);
    bool from_before = place.cone == before;
    V2 Bp = o + times(from_before ? L.ray(i + 1) : L.ray(i - 1), h);
    LoopShape s;
    s.junction_cone = place.cone;
    s.other_cone = from_before ? i : before;
    V2 P1 = inner, P2 = outer;
    if (sgn(signed_area({J, P1, Bp, P2})) != lp.orientation) std::swap(P1, P2);
    s.pts = {P1, Bp, P2};
    Q r1 = dotq(P1 - V2(), L.ray(i).q()) / dotq(L.ray(i).q(), L.ray(i).q());
    Q r2 = dotq(P2 - V2(), L.ray(i).q()) / dotq(L.ray(i).q(), L.ray(i).q());
    I2 x = lp.xi;
    I2 y = L.cross(i, L.slab_of(i, r1), x, from_before);
    I2 z = L.cross(i, L.slab_of(i, r2), y, !from_before);
    s.labels = {x, y, y, z};
    s.net = sub(z, x);
    return s;
}

} // namespace

FocusLoop focus_loop(const FocusFocusLayout& L, int ray, int j, int vertex, const V2& junction, const I2& net) {
    int i = L.mod(ray);
    auto place = L.locate(junction);
    I2 d = place.cone == L.mod(i - 1) ? L.ray(i - 1) : L.ray(i + 1);
    for (int sgn_d : {1, -1})
        for (int orient : {-1, 1}) {
            FocusLoop lp{i, j, orient, vertex, mul(sgn_d, d)};
            if (loop_shape(L, lp, junction).net == net) return lp;
        }
    throw InputError(cyc_err("a loop around a focus-focus point delivers a primitive multiple of the ray generator"));
}

ExpandedCycle expand(const FocusFocusLayout& L, const TropicalCycle& c) {
    ExpandedCycle X;
    auto add_vertex = [&](const V2& at, bool boundary, int origin) {
        ExpandedVertex v;
        v.at = at;
        v.boundary = boundary;
        v.origin = origin;
        auto pl = L.locate(at);
        v.cone = pl.cone;
        v.ray = pl.ray;
        v.radius = pl.radius;
        if (v.ray >= 0) v.slab = L.slab_of(v.ray, v.radius);
        X.vertices.push_back(v);
        return static_cast<int>(X.vertices.size() - 1);
    };
    for (std::size_t k = 0; k < c.vertices.size(); ++k) add_vertex(c.vertices[k].at, c.vertices[k].boundary, static_cast<int>(k));
    auto cones_of = [&](const ExpandedVertex& v) {
        std::vector<int> r;
        if (v.ray >= 0) {
            r.push_back(L.mod(v.ray - 1));
            r.push_back(v.ray);
        } else {
            r.push_back(v.cone);
        }
        return r;
    };
    auto edge_cone = [&](int a, int b, const std::string& what) {
        const auto& va = X.vertices[static_cast<std::size_t>(a)];
        const auto& vb = X.vertices[static_cast<std::size_t>(b)];
        if (a == b) throw InputError(cyc_err(what + " is a loop at one vertex"));
        V2 mid = (va.at + vb.at) * Q(1, 2);
        if (!mid.is_zero()) {
            auto pm = L.locate(mid);
            if (pm.ray < 0)
                for (int ca : cones_of(va))
                    for (int cb : cones_of(vb))
                        if (ca == cb && ca == pm.cone) return ca;
        }
        throw InputError(cyc_err(what + " crosses a ray away from a vertex"));
    };
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
        const auto& e = c.edges[k];
        int nv = static_cast<int>(c.vertices.size());
        if (e.tail < 0 || e.tail >= nv || e.head < 0 || e.head >= nv) throw InputError(cyc_err("edge " + std::to_string(k) + " has an unknown vertex"));
        X.edges.push_back({e.tail, e.head, e.xi, edge_cone(e.tail, e.head, "edge " + std::to_string(k))});
    }
    for (std::size_t k = 0; k < c.loops.size(); ++k) {
        const auto& lp = c.loops[k];
        if (lp.ray < 0 || lp.ray >= L.n()) throw InputError(cyc_err("loop " + std::to_string(k) + " names an unknown ray"));
        if (lp.vertex < 0 || lp.vertex >= static_cast<int>(c.vertices.size()))
            throw InputError(cyc_err("loop " + std::to_string(k) + " has an unknown junction"));
        const V2& J = c.vertices[static_cast<std::size_t>(lp.vertex)].at;
        auto s = loop_shape(L, lp, J);
        int origin = -1 - static_cast<int>(k);
        int p1 = add_vertex(s.pts[0], false, origin);
        int bp = add_vertex(s.pts[1], false, origin);
        int p2 = add_vertex(s.pts[2], false, origin);
        X.edges.push_back({lp.vertex, p1, s.labels[0], s.junction_cone});
        X.edges.push_back({p1, bp, s.labels[1], s.other_cone});
        X.edges.push_back({bp, p2, s.labels[2], s.other_cone});
        X.edges.push_back({p2, lp.vertex, s.labels[3], s.junction_cone});
        X.loop_zeta.push_back(s.net);
    }
    return X;
}

namespace {

std::vector<std::vector<int>> incidence(const ExpandedCycle& X) {
    std::vector<std::vector<int>> inc(X.vertices.size());
    for (std::size_t e = 0; e < X.edges.size(); ++e) {
        inc[static_cast<std::size_t>(X.edges[e].tail)].push_back(static_cast<int>(e));
        inc[static_cast<std::size_t>(X.edges[e].head)].push_back(static_cast<int>(e));
    }
    return inc;
}

I2 residual(const FocusFocusLayout& L, const ExpandedCycle& X, const std::vector<int>& edges, int v) {
    const auto& V = X.vertices[static_cast<std::size_t>(v)];
    I2 r{0, 0};
    for (int ei : edges) {
        const auto& e = X.edges[static_cast<std::size_t>(ei)];
        I2 x = e.xi;
        // common chart: the cone before the ray for ray vertices
        if (V.ray >= 0 && e.cone == V.ray) x = L.cross(V.ray, V.slab, x, false);
        if (e.head == v) r = add(r, x);
        if (e.tail == v) r = sub(r, x);
    }
    return r;
}

// flux of the cycle through the slab at a ray vertex, measured from the cone before the ray
i64 slab_flux(const FocusFocusLayout& L, const ExpandedCycle& X, const std::vector<int>& edges, int v) {
    const auto& V = X.vertices[static_cast<std::size_t>(v)];
    i64 phi = 0;
    int before = L.mod(V.ray - 1);
    for (int ei : edges) {
        const auto& e = X.edges[static_cast<std::size_t>(ei)];
        if (e.cone != before) continue;
        i64 d = L.dcheck(V.ray, e.xi);
        if (e.head == v) phi += d;
        if (e.tail == v) phi -= d;
    }
    return phi;
}

DivisorClass inner_sum(const FocusFocusLayout& L, int ray, const Q& radius) {
    const auto& p = L.pair();
    DivisorClass s = p.zero();
    const auto& r = L.radii(ray);
    for (std::size_t k = 0; k < r.size(); ++k)
        if (r[k] < radius) s = s + p.exc(ray, static_cast<int>(k));
    return s;
}

} // namespace

BalanceReport check_balancing(const FocusFocusLayout& L, const TropicalCycle& c) {
    BalanceReport R;
    auto X = expand(L, c);
    auto inc = incidence(X);
    for (std::size_t v = 0; v < X.vertices.size(); ++v) {
        if (X.vertices[v].boundary) continue;
        I2 r = residual(L, X, inc[v], static_cast<int>(v));
        if (!r.is_zero()) {
            R.ok = false;
            R.residuals.push_back({X.vertices[v].origin, r});
        }
    }
    for (std::size_t e = 0; e < X.edges.size(); ++e)
        if (std::gcd(X.edges[e].xi.x, X.edges[e].xi.y) != 1) {
            R.ok = false;
            R.non_primitive.push_back(static_cast<int>(e));
        }
    R.loop_zeta = X.loop_zeta;
    return R;
}

namespace {

void require_balanced(const FocusFocusLayout& L, const TropicalCycle& c) {
    auto B = check_balancing(L, c);
    if (B.ok) return;
    std::string msg = "unbalanced tropical cycle";
    for (auto& [v, r] : B.residuals) msg += "; vertex " + std::to_string(v) + " residual " + fmt(r);
    for (int e : B.non_primitive) msg += "; edge " + std::to_string(e) + " not primitive";
    throw InputError(msg);
}

// shifted copy of an expanded cycle: vertices inside cones move by a small vector, ray vertices
// slide along their ray inside their slab
std::optional<ExpandedCycle> shifted_copy(const FocusFocusLayout& L, const ExpandedCycle& X, const Q& eta, int attempt) {
    ExpandedCycle Y = X;
    V2 delta(eta * (7 + 3 * attempt) / 101, eta * (11 + 5 * attempt) / 103 * (attempt % 2 ? -1 : 1));
    for (auto& v : Y.vertices) {
        if (v.ray >= 0) {
            Q gap = v.radius;
            for (auto& r : L.radii(v.ray)) gap = qmin(gap, qabs(r - v.radius));
            Q eps = gap * (3 + attempt) / 1013 * (attempt % 3 == 1 ? -1 : 1);
            v.radius += eps;
            v.at = times(L.ray(v.ray), v.radius);
        } else {
            V2 at = v.at + delta;
            auto pl = L.locate(at);
            if (pl.ray >= 0 || pl.cone != v.cone) return std::nullopt;
            v.at = at;
        }
    }
    return Y;
}

} // namespace

i64 tropical_intersection(const FocusFocusLayout& L, const TropicalCycle& a, const TropicalCycle& b, int shift) {
    require_balanced(L, a);
    require_balanced(L, b);
    auto A = expand(L, a);
    auto B = expand(L, b);
    Q eta = -1;
    for (auto* C : {&A, &B})
        for (auto& e : C->edges) {
            V2 d = C->vertices[static_cast<std::size_t>(e.head)].at - C->vertices[static_cast<std::size_t>(e.tail)].at;
            Q len = qmax(qabs(d.x), qabs(d.y));
            if (sgn(eta) < 0 || len < eta) eta = len;
        }
    if (sgn(eta) <= 0) return 0;
    eta /= 64;
    for (int attempt = shift; attempt < shift + 48; ++attempt) {
        Q scale = eta;
        for (int k = 0; k < (attempt - shift) / 8; ++k) scale /= 4;
        auto Bs = shifted_copy(L, B, scale, attempt);
        if (!Bs) continue;
        bool generic = true;
        i64 total = 0;
        for (auto& ea : A.edges) {
            const V2& p = A.vertices[static_cast<std::size_t>(ea.tail)].at;
            V2 r = A.vertices[static_cast<std::size_t>(ea.head)].at - p;
            for (auto& eb : Bs->edges) {
                const V2& q = Bs->vertices[static_cast<std::size_t>(eb.tail)].at;
                V2 s = Bs->vertices[static_cast<std::size_t>(eb.head)].at - q;
                Q den = wedge(r, s);
                V2 qp = q - p;
                if (sgn(den) == 0) {
                    if (sgn(wedge(qp, r)) != 0) continue;
                    // collinear: overlap is not generic
                    Q rr = dotq(r, r);
                    Q t0 = dotq(qp, r) / rr, t1 = dotq(qp + s, r) / rr;
                    if (qmax(t0, t1) >= 0 && qmin(t0, t1) <= 1) generic = false;
                    continue;
                }
                Q t = wedge(qp, s) / den, u = wedge(qp, r) / den;
                if (t < 0 || t > 1 || u < 0 || u > 1) continue;
                if (sgn(t) == 0 || t == 1 || sgn(u) == 0 || u == 1) {
                    generic = false;
                    continue;
                }
                if (ea.cone != eb.cone) throw Error("crossing edges in different cones");
                total += sgn(den) * wedge(ea.xi, eb.xi);
            }
            if (!generic) break;
        }
        // base orientation times fibre orientation, normalized so exceptional cycles square to -1
        if (generic) return total;
    }
    throw InputError("no generic relative position found for the two tropical cycles");
}

WeightVector c1_phi_pairing(const FocusFocusLayout& L, const TropicalCycle& c) {
    auto X = expand(L, c);
    auto inc = incidence(X);
    WeightVector t(static_cast<std::size_t>(L.n()), 0);
    for (std::size_t v = 0; v < X.vertices.size(); ++v)
        if (X.vertices[v].ray >= 0) t[static_cast<std::size_t>(X.vertices[v].ray)] += slab_flux(L, X, inc[v], static_cast<int>(v));
    return t;
}

DivisorClass ronkin_sum(const FocusFocusLayout& L, const TropicalCycle& c) {
    auto X = expand(L, c);
    auto inc = incidence(X);
    DivisorClass s = L.pair().zero();
    for (std::size_t v = 0; v < X.vertices.size(); ++v) {
        const auto& V = X.vertices[v];
        if (V.ray < 0) continue;
        i64 phi = slab_flux(L, X, inc[v], static_cast<int>(v));
        s = s - phi * inner_sum(L, V.ray, V.radius);
    }
    return s;
}

PeriodMonomial period(const FocusFocusLayout& L, const TropicalCycle& c, bool marking_correction) {
    require_balanced(L, c);
    PeriodMonomial P;
    P.t_exponent = c1_phi_pairing(L, c);
    P.class_exponent = ronkin_sum(L, c);
    auto X = expand(L, c);
    auto inc = incidence(X);
    i64 flips = 0;
    for (std::size_t v = 0; v < X.vertices.size(); ++v) {
        std::size_t val = inc[v].size();
        if (X.vertices[v].boundary)
            ++flips;
        else if (val >= 3)
            flips += static_cast<i64>(val) - 2;
    }
    P.sign = flips % 2 ? -1 : 1;
    if (marking_correction) {
        for (std::size_t b = 0; b < X.vertices.size(); ++b) {
            if (!X.vertices[b].boundary || inc[b].size() != 1) continue;
            int cur = static_cast<int>(b), edge = inc[b][0];
            while (true) {
                const auto& e = X.edges[static_cast<std::size_t>(edge)];
                int next = e.tail == cur ? e.head : e.tail;
                const auto& V = X.vertices[static_cast<std::size_t>(next)];
                if (inc[static_cast<std::size_t>(next)].size() != 2 || V.boundary) break;
                if (V.ray >= 0) {
                    if (V.slab != L.blowups(V.ray))
                        throw InputError("the boundary edge crosses ray " + std::to_string(V.ray + 1) + " inside its singular points");
                    i64 phi = slab_flux(L, X, inc[static_cast<std::size_t>(next)], next);
                    P.t_exponent[static_cast<std::size_t>(V.ray)] -= phi;
                    P.class_exponent = P.class_exponent + phi * inner_sum(L, V.ray, V.radius);
                }
                const auto& nx = inc[static_cast<std::size_t>(next)];
                edge = nx[0] == edge ? nx[1] : nx[0];
                cur = next;
            }
        }
    }
    return P;
}

std::string format_period(const LooijengaPair& p, const PeriodMonomial& m) {
    std::string s = m.sign < 0 ? "-" : "+";
    for (std::size_t i = 0; i < m.t_exponent.size(); ++i) {
        i64 k = m.t_exponent[i];
        if (k == 0) continue;
        s += " t^{";
        if (k == -1)
            s += "-";
        else if (k != 1)
            s += std::to_string(k);
        s += "κ_" + std::to_string(i + 1) + "}";
    }
    s += " z^[" + p.format_class(m.class_exponent) + "]";
    return s;
}

DivisorClass period_class(const LooijengaPair& p, const PeriodMonomial& m) {
    DivisorClass c = m.class_exponent;
    for (std::size_t i = 0; i < m.t_exponent.size(); ++i) c = c + m.t_exponent[i] * p.dbar(static_cast<int>(i));
    return c;
}

namespace {

struct Cell {
    int cone = -1;
    V2 from, to; // plane coordinates
};

std::vector<Cell> line_cells(const FocusFocusLayout& L, const CentralFiber& X, int i) {
    std::vector<Cell> out;
    for (auto& C : X.components)
        for (auto& e : C.edges)
            if (e.kind == EdgeKind::Boundary && std::find(e.lines.begin(), e.lines.end(), i) != e.lines.end())
                out.push_back({C.cone, L.to_plane(C.cone, e.from), L.to_plane(C.cone, e.to)});
    return out;
}

bool inside(const FocusFocusLayout& L, const PolygonOnB& F, const V2& x) {
    if (x.is_zero()) return true;
    auto pl = L.locate(x);
    return point_in_polygon(F, {pl.cone, L.to_cone(pl.cone, x)});
}

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = a < 0 ? -1 : 1;
        y = 0;
        return a < 0 ? -a : a;
    }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

} // namespace

std::vector<int> exceptional_start_cones(const FocusFocusLayout& L, int i, const std::vector<i64>& a) {
    AffineAtlas A(L.pair().self_ints());
    auto lines = parallel_lines(A, a);
    auto F = intersect_half_spaces(A, lines);
    if (!F.bounded) throw InputError("P(a) is unbounded");
    auto X = build_central_fiber(A, F, lines);
    std::vector<int> out;
    for (auto& c : line_cells(L, X, L.mod(i)))
        if (std::find(out.begin(), out.end(), c.cone) == out.end()) out.push_back(c.cone);
    return out;
}

namespace {

// cycle from a cell of line i in cone cell.cone, crossing the rays ccw up to the cone before ray i
std::optional<ExceptionalCycle> route_from(const FocusFocusLayout& L, const PolygonOnB& F, const Cell& cell, int i, int j) {
    V2 o = L.singular_point(i, j);
    Q h = L.loop_size(i, j);
    V2 J = o + times(L.ray(i - 1), h);
    // two consecutive lattice points on the cell
    I2 u = primitive(cell.to - cell.from);
    Q c0 = wedge(cell.from, u.q());
    if (c0.get_den() != 1) return std::nullopt;
    i64 al, be;
    ext_gcd(u.y, -u.x, al, be); // al u.y - be u.x = 1
    I2 p0 = mul(to_i64(c0), I2{al, be});
    Q uu = dotq(u.q(), u.q());
    Q t_from = dotq(cell.from - p0.q(), u.q()) / uu, t_to = dotq(cell.to - p0.q(), u.q()) / uu;
    Z t0 = ceil_q(qmin(t_from, t_to));
    if (Q(t0 + 1) > qmax(t_from, t_to)) return std::nullopt;
    V2 v0 = p0.q() + u.q() * (Q(t0) + Q(1) / 2);
    if (!inside(L, F, J) || !inside(L, F, o + times(L.ray(i), h)) || !inside(L, F, o + times(L.ray(i + 1), h)))
        return std::nullopt;
    std::vector<V2> crossings;
    std::vector<int> crossed;
    for (int m = L.mod(cell.cone + 1); m != L.mod(i); m = L.mod(m + 1)) {
        Q rmax = 0;
        for (auto& r : L.radii(m)) rmax = qmax(rmax, r);
        Q hit = F.ray_hits[static_cast<std::size_t>(m)];
        if (hit <= rmax) return std::nullopt;
        crossings.push_back(times(L.ray(m), (rmax + hit) / 2));
        crossed.push_back(m);
    }
    // ν_i carried into the loop, moved back across the crossed rays at their outer slabs
    std::vector<I2> labels(crossed.size() + 1);
    labels.back() = L.ray(i);
    for (std::size_t c = crossed.size(); c-- > 0;) labels[c] = L.cross(crossed[c], L.blowups(crossed[c]), labels[c + 1], false);
    // a cell on another sheet of an immersed line
    if (wedge(labels[0], u) != 0) return std::nullopt;
    ExceptionalCycle E;
    E.start_cone = cell.cone;
    E.ray_crossings = static_cast<int>(crossed.size());
    auto& C = E.cycle;
    C.name = "exceptional E_" + std::to_string(i + 1) + "," + std::to_string(j);
    C.vertices.push_back({v0, true});
    for (auto& x : crossings) C.vertices.push_back({x, false});
    C.vertices.push_back({J, false});
    int jv = static_cast<int>(C.vertices.size() - 1);
    for (std::size_t c = 0; c < labels.size(); ++c) C.edges.push_back({static_cast<int>(c), static_cast<int>(c + 1), labels[c]});
    C.loops.push_back(focus_loop(L, i, j, jv, J, mul(-1, L.ray(i))));
    return E;
}

} // namespace

ExceptionalCycle exceptional_cycle(const FocusFocusLayout& L, int i, int j, const std::vector<i64>& a, ExceptionalOptions opt) {
    i = L.mod(i);
    if (j < 1 || j > L.blowups(i)) throw InputError("no exceptional curve E_" + std::to_string(i + 1) + "," + std::to_string(j));
    AffineAtlas A(L.pair().self_ints());
    bool any_cell = false;
    for (i64 k = 1; k <= 64; ++k) {
        std::vector<i64> ak;
        for (auto v : a) ak.push_back(k * v);
        auto lines = parallel_lines(A, ak);
        auto F = intersect_half_spaces(A, lines);
        if (!F.bounded) throw InputError("P(a) is unbounded");
        auto X = build_central_fiber(A, F, lines);
        auto cells = line_cells(L, X, i);
        // fewest ray crossings first
        auto dist = [&](const Cell& c) { return L.mod(i - 1 - c.cone); };
        std::stable_sort(cells.begin(), cells.end(), [&](const Cell& x, const Cell& y) { return dist(x) < dist(y); });
        for (auto& c : cells) {
            if (opt.start_cone >= 0 && c.cone != L.mod(opt.start_cone)) continue;
            any_cell = true;
            if (auto E = route_from(L, F, c, i, j)) {
                E->divisor = ak;
                return *E;
            }
        }
        if (!any_cell) break;
    }
    if (!any_cell)
        throw InputError("P(a) has no edge on the line parallel to ray " + std::to_string(i + 1) +
                         (opt.start_cone >= 0 ? " in cone " + std::to_string(L.mod(opt.start_cone) + 1) : std::string()));
    throw InputError("no rescaling of P(a) up to 64 admits an exceptional cycle around o_" + std::to_string(i + 1) + "," +
                     std::to_string(j));
}

std::vector<i64> exceptional_divisor(const FocusFocusLayout& L, int i, int j) {
    const auto& s = L.pair().self_ints();
    std::vector<i64> best;
    int best_cr = -1;
    auto consider = [&](const std::vector<i64>& a) {
        try {
            int cr = exceptional_cycle(L, i, j, a).ray_crossings;
            if (best_cr < 0 || cr < best_cr) {
                best = a;
                best_cr = cr;
            }
        } catch (const InputError&) {
        }
        return best_cr == 0;
    };
    if (auto a = find_parallel_configuration(s); a && consider(*a)) return best;
    auto pos = is_positive(s);
    if (pos.status == PositivityStatus::Positive && consider(pos.witness)) return best;
    // D-ample divisors with small entries, looking for a crossing-free route
    std::size_t n = s.size();
    std::vector<i64> a(n, 1);
    while (true) {
        bool ample = true;
        for (auto d : divisor_degrees(s, a)) ample = ample && d > 0;
        if (ample && consider(a)) return best;
        std::size_t k = 0;
        while (k < n && a[k] == 4) a[k++] = 1;
        if (k == n) break;
        ++a[k];
    }
    if (best_cr < 0)
        throw InputError("no candidate divisor admits an exceptional cycle around o_" + std::to_string(L.mod(i) + 1) + "," +
                         std::to_string(j));
    return best;
}

std::vector<std::vector<i64>> e8_gram() {
    std::vector<std::vector<i64>> g(8, std::vector<i64>(8, 0));
    for (int k = 0; k < 8; ++k) g[k][k] = -2;
    for (int k = 1; k < 7; ++k) g[k][k + 1] = g[k + 1][k] = 1;
    g[0][3] = g[3][0] = 1;
    return g;
}

Dp1Suite dp1_suite() {
    Dp1Suite S;
    ToricModel tm{{I2{0, -1}, I2{1, 0}, I2{0, 1}, I2{-1, 3}}, {8, 1, 0, 1}};
    std::vector<std::vector<std::string>> labels(4);
    for (int k = 1; k <= 8; ++k) labels[0].push_back("E_" + std::to_string(k));
    labels[1].push_back("E_9");
    labels[3].push_back("E_10");
    S.pair = build_pair({}, tm, &labels);
    S.pair.set_name("dp1blowup");
    S.layout = gs_layout(S.pair);
    const auto& p = S.pair;
    const auto& L = S.layout;
    S.basis.push_back(p.dbar(0) - p.exc(0, 0) - p.exc(0, 1) - p.exc(0, 2) - p.exc(1, 0) - p.exc(3, 0));
    for (int k = 0; k < 7; ++k) S.basis.push_back(p.exc(0, k) - p.exc(0, k + 1));

    // β': five loops feeding a vertex in the cone between rays 1 and 2
    {
        TropicalCycle C;
        C.name = "betaprime";
        V2 X(Q(1) / 4, Q(-1) / 4);
        C.vertices.push_back({X, false});
        auto junction = [&](int ray, int j, int side_ray) {
            V2 J = L.singular_point(ray, j) + times(L.ray(side_ray), L.loop_size(ray, j));
            C.vertices.push_back({J, false});
            int v = static_cast<int>(C.vertices.size() - 1);
            C.loops.push_back(focus_loop(L, ray, j, v, J, L.ray(ray)));
            return v;
        };
        for (int j = 1; j <= 3; ++j) C.edges.push_back({junction(0, j, 1), 0, L.ray(0)});
        C.edges.push_back({junction(1, 1, 0), 0, L.ray(1)});
        int j3 = junction(3, 1, 0);
        C.vertices.push_back({times(L.ray(0), Q(1) / 18), false});
        int P = static_cast<int>(C.vertices.size() - 1);
        C.edges.push_back({j3, P, L.ray(3)});
        C.edges.push_back({P, 0, L.cross(0, 0, L.ray(3), true)});
        S.cycles.push_back(C);
    }
    // β^i: around o_1(i+1), along ν_1, then around o_1i
    for (int k = 1; k <= 7; ++k) {
        TropicalCycle C;
        C.name = "beta" + std::to_string(k);
        V2 Jout = L.singular_point(0, k + 1) + times(L.ray(3), L.loop_size(0, k + 1));
        V2 Jin = L.singular_point(0, k) + times(L.ray(3), L.loop_size(0, k));
        C.vertices = {{Jout, false}, {Jin, false}};
        C.edges.push_back({0, 1, L.ray(0)});
        C.loops.push_back(focus_loop(L, 0, k + 1, 0, Jout, L.ray(0)));
        C.loops.push_back(focus_loop(L, 0, k, 1, Jin, mul(-1, L.ray(0))));
        S.cycles.push_back(C);
    }
    std::size_t m = S.cycles.size();
    S.gram.assign(m, std::vector<i64>(m, 0));
    S.class_gram.assign(m, std::vector<i64>(m, 0));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            S.gram[a][b] = tropical_intersection(L, S.cycles[a], S.cycles[b]);
            S.class_gram[a][b] = p.intersect(S.basis[a], S.basis[b]);
        }
    for (auto& C : S.cycles) S.periods.push_back(period(L, C, true));
    return S;
}

} // namespace lcy
