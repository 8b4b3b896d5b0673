#pragma once
// Brute-force reference implementations used only by tests.

#include "lcy/lattice.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace oracle {

using lcy::I2;
using lcy::i64;
using lcy::Q;
using lcy::V2;

template <class T>
std::string fmt_vec(const std::vector<T>& v) {
    std::string s;
    for (auto x : v) s += std::to_string(static_cast<long>(x)) + " ";
    return s;
}

inline bool inside_convex(const std::vector<V2>& poly, const V2& p) {
    for (std::size_t i = 0; i < poly.size(); ++i)
        if (lcy::wedge(poly[(i + 1) % poly.size()] - poly[i], p - poly[i]) < 0) return false;
    return true;
}

// every integer point of the bounding box tested against every edge
inline std::vector<I2> box_scan(const std::vector<V2>& poly) {
    Q x0 = poly[0].x, x1 = poly[0].x, y0 = poly[0].y, y1 = poly[0].y;
    for (auto& v : poly) {
        x0 = std::min(x0, v.x);
        x1 = std::max(x1, v.x);
        y0 = std::min(y0, v.y);
        y1 = std::max(y1, v.y);
    }
    std::vector<I2> out;
    for (i64 x = lcy::to_i64(lcy::ceil_q(x0)); x <= lcy::to_i64(lcy::floor_q(x1)); ++x)
        for (i64 y = lcy::to_i64(lcy::ceil_q(y0)); y <= lcy::to_i64(lcy::floor_q(y1)); ++y)
            if (inside_convex(poly, V2(Q(static_cast<long>(x)), Q(static_cast<long>(y))))) out.push_back({x, y});
    std::sort(out.begin(), out.end());
    return out;
}

// monotone chain, counterclockwise, collinear points dropped
inline std::vector<V2> convex_hull(std::vector<V2> p) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.size() < 3) return p;
    std::vector<V2> h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && lcy::wedge(h[k - 1] - h[k - 2], p[i] - h[k - 2]) <= 0) --k;
        h[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && lcy::wedge(h[k - 1] - h[k - 2], p[i] - h[k - 2]) <= 0) --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    return h;
}

inline i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Lexicographically first a in [1..B]^n with M a > 0 and max(a) == B (or max <= B when
// exact is false). The prefix runs over the whole box; the last coordinate is solved
// as an interval.
inline std::vector<i64> box_witness(const std::vector<std::vector<i64>>& M, i64 B, bool exact) {
    std::size_t n = M.size();
    std::vector<i64> a(n, 1);
    for (;;) {
        bool hit = false;
        for (std::size_t k = 0; k + 1 < n; ++k) hit = hit || a[k] == B;
        i64 lo = 1, hi = B;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            i64 s = 0;
            for (std::size_t j = 0; j + 1 < n; ++j) s += M[i][j] * a[j];
            i64 m = M[i][n - 1];
            if (m > 0)
                lo = std::max(lo, floor_div(-s, m) + 1);
            else if (m < 0)
                hi = std::min(hi, -floor_div(-s, -m) - 1);
            else if (s <= 0)
                ok = false;
        }
        if (ok && lo <= hi) {
            if (!exact || hit) {
                a[n - 1] = lo;
                return a;
            }
            if (hi == B) {
                a[n - 1] = B;
                return a;
            }
        }
        std::size_t k = n - 1;
        bool done = true;
        while (k > 0) {
            --k;
            if (a[k] < B) {
                ++a[k];
                for (std::size_t r = k + 1; r + 1 < n; ++r) a[r] = 1;
                done = false;
                break;
            }
        }
        if (done) return {};
    }
}

// lexicographically first witness of minimal max-norm, searched up to bound
inline std::vector<i64> brute_positive_witness(const std::vector<std::vector<i64>>& M, i64 bound) {
    if (box_witness(M, bound, false).empty()) return {};
    for (i64 B = 1; B <= bound; ++B) {
        auto w = box_witness(M, B, true);
        if (!w.empty()) return w;
    }
    return {};
}

// vertices of {x : wedge(x, m_k) <= a_k for all k} by pairwise line intersection
inline std::vector<V2> plane_polytope(const std::vector<I2>& rays, const std::vector<i64>& a) {
    std::vector<V2> cand;
    std::size_t n = rays.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            // x.x m.y - x.y m.x = a for both
            Q a1 = Q(static_cast<long>(a[i])), a2 = Q(static_cast<long>(a[j]));
            Q p1 = Q(static_cast<long>(rays[i].y)), q1 = -Q(static_cast<long>(rays[i].x));
            Q p2 = Q(static_cast<long>(rays[j].y)), q2 = -Q(static_cast<long>(rays[j].x));
            Q det = p1 * q2 - p2 * q1;
            if (sgn(det) == 0) continue;
            V2 x((a1 * q2 - a2 * q1) / det, (p1 * a2 - p2 * a1) / det);
            bool ok = true;
            for (std::size_t k = 0; k < n && ok; ++k)
                ok = lcy::wedge(x, rays[k].q()) <= Q(static_cast<long>(a[k]));
            if (ok) cand.push_back(x);
        }
    return convex_hull(cand);
}

// E8(-1) Gram matrix of β', β^1..β^7 as printed, plus the β'·β³ = 1 that the printed matrix omits.
inline std::vector<std::vector<i64>> stated_e8() {
    std::vector<std::vector<i64>> g{{-2, 0, 0, 0, 0, 0, 0, 0}, {0, -2, 1, 0, 0, 0, 0, 0}, {0, 1, -2, 1, 0, 0, 0, 0},
                                    {0, 0, 1, -2, 1, 0, 0, 0}, {0, 0, 0, 1, -2, 1, 0, 0}, {0, 0, 0, 0, 1, -2, 1, 0},
                                    {0, 0, 0, 0, 0, 1, -2, 1}, {0, 0, 0, 0, 0, 0, 1, -2}};
    g[0][3] = g[3][0] = 1;
    return g;
}

// fraction-free elimination
inline i64 det(std::vector<std::vector<i64>> m) {
    std::size_t n = m.size();
    i64 sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

} // namespace oracle
