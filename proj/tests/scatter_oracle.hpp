#pragma once
// Test-side wall-crossing composition, written independently of the library:
// dense binomial expansion of wall powers, angle order by atan2.

#include "lcy/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

namespace oracle {

using lcy::DivisorClass;
using lcy::I2;
using lcy::i64;
using lcy::Z;

struct Term {
    I2 m;
    DivisorClass A;
    bool operator<(const Term& o) const {
        if (m.x != o.m.x) return m.x < o.m.x;
        if (m.y != o.m.y) return m.y < o.m.y;
        return A < o.A;
    }
    bool operator==(const Term& o) const { return m == o.m && A == o.A; }
};
using Poly = std::map<Term, Z>;

struct Truncation {
    int first_e; // index of the first exceptional coordinate
    int order;
    int deg(const DivisorClass& A) const {
        i64 s = 0;
        for (std::size_t k = static_cast<std::size_t>(first_e); k < A.size(); ++k) s += A[k];
        return static_cast<int>(s);
    }
};

inline Poly times(const Poly& a, const Poly& b, const Truncation& t) {
    Poly r;
    for (auto& [ta, ca] : a)
        for (auto& [tb, cb] : b) {
            DivisorClass A(ta.A.size());
            for (std::size_t k = 0; k < A.size(); ++k) A[k] = ta.A[k] + tb.A[k];
            if (t.deg(A) > t.order) continue;
            r[{ta.m + tb.m, A}] += ca * cb;
        }
    Poly out;
    for (auto& [k, v] : r)
        if (v != 0) out[k] = v;
    return out;
}

// f^e for f = 1 + g; negative powers through the binomial series Σ_j C(e, j) g^j
inline Poly wall_power(const Poly& f, i64 e, const Truncation& t, std::size_t rank) {
    Poly g = f;
    g.erase({I2{0, 0}, DivisorClass(rank, 0)});
    Poly out, gj;
    gj[{I2{0, 0}, DivisorClass(rank, 0)}] = 1;
    Z binom = 1;
    for (int j = 0; j <= t.order; ++j) {
        if (j > 0) {
            gj = times(gj, g, t);
            // C(e, j) = C(e, j-1) (e - j + 1) / j
            binom = binom * Z(static_cast<long>(e - j + 1));
            binom /= j;
        }
        if (binom == 0) break;
        for (auto& [k, v] : gj) out[k] += binom * v;
        if (gj.empty()) break;
    }
    Poly clean;
    for (auto& [k, v] : out)
        if (v != 0) clean[k] = v;
    return clean;
}

struct OracleWall {
    I2 dir;
    Poly f;
};

inline std::vector<OracleWall> to_oracle(const std::vector<lcy::Wall>& walls) {
    std::vector<OracleWall> out;
    for (auto& w : walls) {
        OracleWall o{w.dir, {}};
        for (auto& [m, c] : w.f) o.f[{m.m, m.A}] = c;
        out.push_back(o);
    }
    return out;
}

// counterclockwise loop starting just below the positive x-axis
inline Poly loop(std::vector<OracleWall> walls, const Poly& s, const Truncation& t, std::size_t rank) {
    auto ang = [](const I2& v) {
        double a = std::atan2(static_cast<double>(v.y), static_cast<double>(v.x));
        return a < 0 ? a + 2 * M_PI : a;
    };
    std::stable_sort(walls.begin(), walls.end(), [&](const OracleWall& a, const OracleWall& b) { return ang(a.dir) < ang(b.dir); });
    Poly cur = s;
    for (auto& w : walls) {
        Poly next;
        for (auto& [term, c] : cur) {
            i64 e = lcy::wedge(term.m, w.dir);
            Poly single;
            single[term] = c;
            Poly r = times(single, wall_power(w.f, e, t, rank), t);
            for (auto& [k, v] : r) next[k] += v;
        }
        cur.clear();
        for (auto& [k, v] : next)
            if (v != 0) cur[k] = v;
    }
    return cur;
}

inline bool loop_is_identity(const std::vector<OracleWall>& walls, const Truncation& t, std::size_t rank) {
    for (I2 e : {I2{1, 0}, I2{0, 1}, I2{-1, 2}}) {
        Poly s;
        s[{e, DivisorClass(rank, 0)}] = 1;
        if (loop(walls, s, t, rank) != s) return false;
    }
    return true;
}

} // namespace oracle

namespace oracle {

// Every bend sequence of a broken line with initial exponent q ending at Q, enumerated
// backwards from Q over all admissible final exponents.
struct LineEnd {
    I2 m;
    DivisorClass bends;
    Z coeff;
};

using PowerCache = std::vector<std::map<i64, Poly>>;

inline void bend_patterns(const std::vector<OracleWall>& walls, PowerCache& cache, const Truncation& t, std::size_t rank, const I2& q,
                          const lcy::V2& x, const I2& m, const DivisorClass& B, const Z& c, const I2& final_m,
                          std::vector<LineEnd>& out) {
    using lcy::Q;
    // nearest wall hit moving along +m
    int best = -1;
    Q bs;
    for (std::size_t i = 0; i < walls.size(); ++i) {
        const I2& d = walls[i].dir;
        i64 den = lcy::wedge(m, d);
        if (den == 0) continue;
        // x + s m = u d with s, u > 0
        Q s = lcy::wedge(d.q(), x) / Q(static_cast<long>(den));
        Q u = lcy::wedge(x, m.q()) / Q(static_cast<long>(lcy::wedge(d, m)));
        if (s <= 0 || u <= 0) continue;
        if (best < 0 || s < bs) {
            best = static_cast<int>(i);
            bs = s;
        }
    }
    if (best < 0) {
        if (m == q) out.push_back({final_m, B, c});
        return;
    }
    lcy::V2 y = x + m.q() * bs;
    bend_patterns(walls, cache, t, rank, q, y, m, B, c, final_m, out);
    const auto& w = walls[static_cast<std::size_t>(best)];
    i64 e = lcy::wedge(m, w.dir);
    i64 ae = e < 0 ? -e : e;
    auto& slot = cache[static_cast<std::size_t>(best)];
    if (!slot.count(ae)) slot[ae] = wall_power(w.f, ae, t, rank);
    const Poly& fp = slot[ae];
    for (auto& [term, tc] : fp) {
        if (term.m.is_zero()) continue;
        DivisorClass nb(rank);
        for (std::size_t k = 0; k < rank; ++k) nb[k] = B[k] + term.A[k];
        if (t.deg(nb) > t.order) continue;
        I2 prev = m - term.m;
        if (prev.is_zero()) continue;
        bend_patterns(walls, cache, t, rank, q, y, prev, nb, c * tc, final_m, out);
    }
}

// α(p, q, r) minus the φ̄ bookkeeping: Σ over line pairs of c1 c2 z^{B1 + B2}, keyed by the
// bend classes plus φ̄(p) + φ̄(q) - φ̄(r) supplied by the caller.
inline std::map<DivisorClass, Z> pair_count(const std::vector<OracleWall>& walls, const Truncation& t,
                                            std::size_t rank, const I2& p, const I2& q, const I2& r,
                                            const lcy::V2& Qp, const DivisorClass& shift, int radius) {
    std::vector<LineEnd> lp, lq;
    PowerCache cache(walls.size());
    for (i64 a = -radius; a <= radius; ++a)
        for (i64 b = -radius; b <= radius; ++b) {
            I2 m{a, b};
            if (m.is_zero()) continue;
            if (!p.is_zero()) bend_patterns(walls, cache, t, rank, p, Qp, m, DivisorClass(rank, 0), Z(1), m, lp);
            if (!q.is_zero()) bend_patterns(walls, cache, t, rank, q, Qp, m, DivisorClass(rank, 0), Z(1), m, lq);
        }
    if (p.is_zero()) lp.push_back({I2{0, 0}, DivisorClass(rank, 0), Z(1)});
    if (q.is_zero()) lq.push_back({I2{0, 0}, DivisorClass(rank, 0), Z(1)});
    std::map<DivisorClass, Z> out;
    for (auto& a : lp)
        for (auto& b : lq) {
            if (!(a.m + b.m == r)) continue;
            DivisorClass C(rank);
            for (std::size_t k = 0; k < rank; ++k) C[k] = a.bends[k] + b.bends[k] + shift[k];
            if (t.deg(C) > t.order) continue;
            out[C] += a.coeff * b.coeff;
        }
    std::map<DivisorClass, Z> clean;
    for (auto& [k, v] : out)
        if (v != 0) clean[k] = v;
    return clean;
}

} // namespace oracle
