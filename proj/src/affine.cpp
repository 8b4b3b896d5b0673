#include "lcy/affine.hpp"

#include <algorithm>

namespace lcy {

AffineAtlas::AffineAtlas(const std::vector<i64>& self_ints) : n_(static_cast<int>(self_ints.size())) {
    if (n_ == 0) throw InputError("empty boundary cycle");
    dt_ = self_ints;
    if (n_ == 1) dt_[0] -= 2;
    trans_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        i64 d = dt(i + 1);
        trans_[static_cast<std::size_t>(i)] = M2{-d, 1, -1, 0};
    }
}

M2 AffineAtlas::monodromy() const {
    M2 m = M2::identity();
    for (int i = 0; i < n_; ++i) m = transition(i) * m;
    return m;
}

ChartPoint AffineAtlas::to_next(const ChartPoint& x) const {
    if (sgn(x.p.x) != 0) throw Error("to_next: point not on the end ray of its cone");
    return {mod(x.cone + 1), V2(x.p.y, Q(0))};
}

ChartPoint AffineAtlas::to_prev(const ChartPoint& x) const {
    if (sgn(x.p.y) != 0) throw Error("to_prev: point not on the start ray of its cone");
    return {mod(x.cone - 1), V2(Q(0), x.p.x)};
}

ChartPoint AffineAtlas::canonical(const ChartPoint& x) const {
    ChartPoint c{mod(x.cone), x.p};
    if (sgn(c.p.x) < 0 || sgn(c.p.y) < 0) throw Error("chart point outside its cone");
    if (c.p.is_zero()) return {0, c.p};
    if (sgn(c.p.y) == 0) {
        // on ray `cone`
        if (c.cone == 0) return c;
        return to_prev(c);
    }
    if (sgn(c.p.x) == 0) {
        // on ray cone+1
        if (mod(c.cone + 1) == 0) return to_next(c);
        return c;
    }
    return c;
}

V2 AffineAtlas::transport(const V2& v, int from, int steps) const {
    V2 r = v;
    int c = from;
    for (int s = 0; s < steps; ++s, ++c) r = transition(c) * r;
    for (int s = 0; s > steps; --s, --c) r = transition(c - 1).inverse() * r;
    return r;
}

I2 AffineAtlas::transport(const I2& v, int from, int steps) const {
    I2 r = v;
    int c = from;
    for (int s = 0; s < steps; ++s, ++c) r = transition(c) * r;
    for (int s = 0; s > steps; --s, --c) r = transition(c - 1).inverse() * r;
    return r;
}

std::vector<I2> AffineAtlas::developing_rays(I2 w0, I2 w1, int count) const {
    std::vector<I2> w{w0, w1};
    for (int k = 1; static_cast<int>(w.size()) <= count; ++k) {
        const I2& a = w[static_cast<std::size_t>(k - 1)];
        const I2& b = w[static_cast<std::size_t>(k)];
        w.push_back(-a - b * dt(k));
    }
    w.resize(static_cast<std::size_t>(count + 1));
    return w;
}

V2 AffineAtlas::develop(int k, const V2& bc, const std::vector<I2>& rays) const {
    if (k < 0 || k + 1 >= static_cast<int>(rays.size())) throw Error("develop: cone outside the computed range");
    return rays[static_cast<std::size_t>(k)].q() * bc.x + rays[static_cast<std::size_t>(k + 1)].q() * bc.y;
}

std::vector<LineSegment> AffineAtlas::trace_ray(const ChartPoint& start, const V2& dir, TraceOptions opt) const {
    if (dir.is_zero()) throw InputError("trace: zero direction");
    std::vector<LineSegment> out;
    int cone = mod(start.cone);
    V2 p = start.p, d = dir;
    if (p.is_zero()) throw InputError("trace: line passes through the origin");
    for (int step = 0; step < opt.max_segments; ++step) {
        bool hit_b = sgn(d.x) < 0, hit_c = sgn(d.y) < 0;
        if (!hit_b && !hit_c) {
            out.push_back({cone, p, p, d, false, true});
            return out;
        }
        Q tb = hit_b ? Q(-p.x / d.x) : Q(-1);
        Q tc = hit_c ? Q(-p.y / d.y) : Q(-1);
        bool via_b;
        if (hit_b && hit_c) {
            if (tb == tc) throw InputError("trace: line passes through the origin");
            via_b = tb < tc;
        } else {
            via_b = hit_b;
        }
        Q t = via_b ? tb : tc;
        V2 q = p + d * t;
        if (q.is_zero()) throw InputError("trace: line passes through the origin");
        if (sgn(t) > 0) out.push_back({cone, p, q, d, false, false});
        if (via_b) {
            d = transition(cone) * d;
            p = V2(q.y, Q(0));
            cone = mod(cone + 1);
        } else {
            d = transition(cone - 1).inverse() * d;
            p = V2(Q(0), q.x);
            cone = mod(cone - 1);
        }
    }
    throw Error("trace: segment limit exceeded");
}

namespace {

int parallel_ray(int cone, int n, const V2& d) {
    if (sgn(d.x) == 0) return (cone + 1) % n;
    if (sgn(d.y) == 0) return cone;
    return -1;
}

} // namespace

ImmersedLine AffineAtlas::trace_line(const ChartPoint& start, const V2& dir, TraceOptions opt) const {
    Q dist = wedge(start.p, dir);
    if (sgn(dist) == 0) throw InputError("trace: line passes through the origin");
    V2 d = sgn(dist) < 0 ? -dir : dir;
    if (sgn(dist) < 0) dist = -dist;
    auto fwd = trace_ray(start, d, opt);
    auto bwd = trace_ray(start, -d, opt);
    ImmersedLine L;
    L.distance = dist;
    for (auto it = bwd.rbegin(); it != bwd.rend(); ++it) {
        LineSegment s = *it;
        s.dir = -s.dir;
        std::swap(s.entry, s.exit);
        std::swap(s.inf_begin, s.inf_end);
        L.segments.push_back(s);
    }
    // merge the two halves that meet at the start point
    if (!L.segments.empty() && !fwd.empty() && L.segments.back().cone == fwd.front().cone &&
        L.segments.back().exit == fwd.front().entry) {
        LineSegment& b = L.segments.back();
        b.exit = fwd.front().exit;
        b.inf_end = fwd.front().inf_end;
        fwd.erase(fwd.begin());
    }
    for (auto& s : fwd) L.segments.push_back(s);
    const auto& first = L.segments.front();
    const auto& last = L.segments.back();
    L.begin_cone = first.cone;
    L.end_cone = last.cone;
    L.begin_parallel_ray = parallel_ray(first.cone, n_, -first.dir);
    L.end_parallel_ray = parallel_ray(last.cone, n_, last.dir);
    return L;
}

Q line_distance(const ImmersedLine& L) { return L.distance; }

} // namespace lcy
