#include "lcy/scattering.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <set>

namespace lcy {

namespace {

std::atomic<std::uint64_t> g_terms{0};
std::atomic<std::uint64_t> g_violations{0};

// angle order on nonzero integer vectors, starting at the positive x-axis
int half(const I2& v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; }
bool angle_less(const I2& a, const I2& b) {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return wedge(a, b) > 0;
}

// solve x·a + y·b = 1 for primitive (a, b)
void ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return;
    }
    i64 x1, y1;
    ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
}

} // namespace

// ---------------------------------------------------------------- φ̄

PLFunction::PLFunction(const LooijengaPair& p) {
    const auto& tm = p.toric_model();
    rays_ = tm.rays;
    std::size_t n = rays_.size();
    for (std::size_t i = 0; i < n; ++i) kinks_.push_back(p.dbar(static_cast<int>(i)));
    DivisorClass zero = p.zero();
    lin_x_.assign(n, zero);
    lin_y_.assign(n, zero);
    // L_i = L_{i-1} + κ_i ⊗ wedge(m̄_i, ·), starting from L_{n-1} = 0
    DivisorClass lx = zero, ly = zero;
    for (std::size_t i = 0; i < n; ++i) {
        lx = lx + (-rays_[i].y) * kinks_[i];
        ly = ly + rays_[i].x * kinks_[i];
        lin_x_[i] = lx;
        lin_y_[i] = ly;
    }
    if (lin_x_[n - 1] != zero || lin_y_[n - 1] != zero) throw Error("PL function does not close up around 0");
}

PLFunction PLFunction::with_gauge(I2 ell, const DivisorClass& G) const {
    PLFunction r = *this;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
        r.lin_x_[i] = r.lin_x_[i] + ell.x * G;
        r.lin_y_[i] = r.lin_y_[i] + ell.y * G;
    }
    return r;
}

int PLFunction::cone_of(const I2& x) const {
    if (x.is_zero()) return 0;
    std::size_t n = rays_.size();
    for (std::size_t i = 0; i < n; ++i)
        if (wedge(rays_[i], x) >= 0 && wedge(x, rays_[(i + 1) % n]) > 0) return static_cast<int>(i);
    throw Error("point outside the fan");
}

int PLFunction::cone_of(const V2& x) const {
    if (x.is_zero()) return 0;
    std::size_t n = rays_.size();
    for (std::size_t i = 0; i < n; ++i)
        if (sgn(wedge(rays_[i].q(), x)) >= 0 && sgn(wedge(x, rays_[(i + 1) % n].q())) > 0)
            return static_cast<int>(i);
    throw Error("point outside the fan");
}

DivisorClass PLFunction::operator()(const I2& x) const {
    std::size_t i = static_cast<std::size_t>(cone_of(x));
    return x.x * lin_x_[i] + x.y * lin_y_[i];
}

// ---------------------------------------------------------------- walls

std::vector<Wall> initial_walls(const LooijengaPair& p, const PLFunction& phi) {
    const auto& tm = p.toric_model();
    std::vector<Wall> out;
    for (std::size_t i = 0; i < tm.rays.size(); ++i) {
        int l = tm.blowups[i];
        if (l == 0) continue;
        const I2& m = tm.rays[i];
        DivisorClass lift = phi(m);
        Wall w;
        w.dir = m;
        w.initial = true;
        w.f[{I2{0, 0}, p.zero()}] = 1;
        // ∏_j (1 + z^{(-m̄_i, E_ij - φ̄(m̄_i))})
        for (int j = 0; j < l; ++j) {
            Series next;
            Mono t{-m, p.exc(static_cast<int>(i), j) - lift};
            for (auto& [mono, c] : w.f) {
                next[mono] += c;
                next[{mono.m + t.m, mono.A + t.A}] += c;
            }
            w.f = next;
        }
        out.push_back(w);
    }
    return out;
}

ScatteringDiagram::ScatteringDiagram(const LooijengaPair& p, const PLFunction& phi, int order)
    : ScatteringDiagram(p, phi, order, initial_walls(p, phi)) {}

ScatteringDiagram::ScatteringDiagram(const LooijengaPair& p, const PLFunction& phi, int order, std::vector<Wall> init)
    : pair_(&p), phi_(phi), order_(order), e_start_(p.n() - 2) {
    if (order < 0) throw InputError("order must be non-negative");
    // each line through 0 becomes two opposite rays
    for (auto& w : init) {
        Wall a = w, b = w;
        a.dir = primitive(w.dir);
        b.dir = -a.dir;
        for (auto& [mono, c] : w.f) {
            if (mono.m.is_zero()) {
                if (degree(mono) != 0 || c != 1) throw InputError("wall function is not 1 modulo the maximal ideal");
                continue;
            }
            if (wedge(mono.m, a.dir) != 0) throw InputError("wall exponent not parallel to its support");
            if (degree(mono) < 1) throw InputError("wall term of non-positive exceptional degree");
        }
        bool merged_a = false, merged_b = false;
        for (auto& x : walls_) {
            if (x.dir == a.dir) {
                x.f = mul(x.f, a.f);
                merged_a = true;
            } else if (x.dir == b.dir) {
                x.f = mul(x.f, b.f);
                merged_b = true;
            }
        }
        if (!merged_a) walls_.push_back(a);
        if (!merged_b) walls_.push_back(b);
    }
    for (auto& w : walls_) {
        Series t;
        for (auto& [mono, c] : w.f)
            if (degree(mono) <= order_ && sgn(c) != 0) t[mono] = c;
        w.f = t;
    }
    sort_walls();
    complete();
}

ScatteringDiagram ScatteringDiagram::from_walls(const LooijengaPair& p, const PLFunction& phi, std::vector<Wall> lines,
                                                int order) {
    return ScatteringDiagram(p, phi, order, std::move(lines));
}

std::vector<Wall> ScatteringDiagram::scattered_walls() const {
    std::vector<Wall> out;
    for (auto& w : walls_)
        if (!w.initial) out.push_back(w);
    return out;
}

int ScatteringDiagram::degree(const Mono& m) const {
    i64 s = 0;
    for (std::size_t k = static_cast<std::size_t>(e_start_); k < m.A.size(); ++k) s += m.A[k];
    return static_cast<int>(s);
}

Series ScatteringDiagram::mul(const Series& a, const Series& b) const {
    Series r;
    for (auto& [ma, ca] : a)
        for (auto& [mb, cb] : b) {
            Mono m{ma.m + mb.m, ma.A + mb.A};
            if (degree(m) > order_) continue;
            r[m] += ca * cb;
        }
    for (auto it = r.begin(); it != r.end();) {
        if (sgn(it->second) == 0)
            it = r.erase(it);
        else
            ++it;
    }
    return r;
}

Series ScatteringDiagram::power(const Series& f, i64 e) const {
    // f = 1 + g with deg g >= 1
    Series one;
    one[{I2{0, 0}, pair_->zero()}] = 1;
    if (e == 0) return one;
    auto trunc = [&](Series s) {
        for (auto it = s.begin(); it != s.end();) {
            if (degree(it->first) > order_ || sgn(it->second) == 0)
                it = s.erase(it);
            else
                ++it;
        }
        return s;
    };
    Series base;
    if (e > 0) {
        base = f;
    } else {
        // (1+g)^{-1} = Σ (-g)^j
        Series g = f;
        g.erase({I2{0, 0}, pair_->zero()});
        Series neg;
        for (auto& [m, c] : g) neg[m] = -c;
        Series inv = one, term = one;
        for (int j = 1; j <= order_; ++j) {
            term = trunc(mul(term, neg));
            if (term.empty()) break;
            for (auto& [m, c] : term) inv[m] += c;
        }
        base = trunc(inv);
        e = -e;
    }
    Series r = one;
    for (i64 k = 0; k < e; ++k) r = trunc(mul(r, base));
    return r;
}

Series ScatteringDiagram::apply_wall(const Wall& w, const Series& s) const {
    std::size_t idx = static_cast<std::size_t>(&w - walls_.data());
    bool own = idx < walls_.size();
    Series out;
    for (auto& [mono, c] : s) {
        i64 e = wedge(mono.m, w.dir);
        Series tmp;
        if (!own) tmp = power(w.f, e);
        const Series& fp = own ? wall_power(idx, e) : tmp;
        for (auto& [t, ct] : fp) {
            Mono m{mono.m + t.m, mono.A + t.A};
            if (degree(m) > order_) continue;
            out[m] += c * ct;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (sgn(it->second) == 0)
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

const Series& ScatteringDiagram::wall_power(std::size_t wall, i64 e) const {
    auto key = std::make_pair(wall, e);
    auto it = pow_cache_.find(key);
    if (it == pow_cache_.end()) it = pow_cache_.emplace(key, power(walls_[wall].f, e)).first;
    return it->second;
}

bool ScatteringDiagram::reachable_within(const I2& s, int budget) const {
    reachable();
    if (budget < 0) return false;
    budget = std::min(budget, order_);
    return reachable_cum_[static_cast<std::size_t>(budget)].count(s) > 0;
}

const std::vector<I2>& ScatteringDiagram::reachable() const {
    if (reachable_done_) return reachable_;
    std::vector<std::set<I2>> bydeg(static_cast<std::size_t>(order_ + 1));
    bydeg[0].insert(I2{0, 0});
    std::set<std::pair<I2, int>> terms;
    for (auto& w : walls_)
        for (auto& [t, c] : w.f)
            if (!t.m.is_zero()) terms.insert({t.m, degree(t)});
    for (int d = 1; d <= order_; ++d)
        for (auto& [tm, td] : terms)
            if (td >= 1 && td <= d)
                for (auto& s : bydeg[static_cast<std::size_t>(d - td)]) bydeg[static_cast<std::size_t>(d)].insert(s + tm);
    std::set<I2> all;
    reachable_cum_.clear();
    for (auto& s : bydeg) {
        all.insert(s.begin(), s.end());
        reachable_cum_.push_back(all);
    }
    reachable_.assign(all.begin(), all.end());
    reachable_done_ = true;
    return reachable_;
}

Series ScatteringDiagram::loop(const Series& s) const {
    Series cur = s;
    for (auto& w : walls_) cur = apply_wall(w, cur);
    return cur;
}

bool ScatteringDiagram::consistent() const {
    for (I2 e : {I2{1, 0}, I2{0, 1}, I2{1, 1}, I2{-2, 1}}) {
        Series s;
        s[{e, pair_->zero()}] = 1;
        Series out = loop(s);
        for (auto it = out.begin(); it != out.end();) {
            if (degree(it->first) > order_)
                it = out.erase(it);
            else
                ++it;
        }
        if (out != s) return false;
    }
    return true;
}

void ScatteringDiagram::sort_walls() {
    std::stable_sort(walls_.begin(), walls_.end(), [](const Wall& a, const Wall& b) { return angle_less(a.dir, b.dir); });
    pow_cache_.clear();
    reachable_done_ = false;
}

void ScatteringDiagram::add_term(const I2& dir, const Mono& mono, const Z& c) {
    Series factor;
    factor[{I2{0, 0}, pair_->zero()}] = 1;
    factor[mono] = c;
    for (auto& w : walls_) {
        if (w.dir == dir) {
            w.f = mul(w.f, factor);
            for (auto it = w.f.begin(); it != w.f.end();) {
                if (degree(it->first) > order_)
                    it = w.f.erase(it);
                else
                    ++it;
            }
            return;
        }
    }
    Wall w;
    w.dir = dir;
    w.f = factor;
    walls_.push_back(w);
}

void ScatteringDiagram::complete() {
    DivisorClass zero = pair_->zero();
    for (int ord = 1; ord <= order_; ++ord) {
        Series e1, e2;
        e1[{I2{1, 0}, zero}] = 1;
        e2[{I2{0, 1}, zero}] = 1;
        Series l1 = loop(e1), l2 = loop(e2);
        // h_e(m, A): coefficient of z^{e + m, A} in loop(z^e)
        std::map<Mono, std::pair<Z, Z>> h;
        for (auto& [mono, c] : l1) {
            int d = degree(mono);
            if (d == 0) {
                if (!(mono.m == I2{1, 0}) || c != 1) throw Error("scattering: degree-zero discrepancy");
                continue;
            }
            if (d > ord) continue;
            if (d < ord) throw Error("scattering: lower-order inconsistency");
            h[{mono.m - I2{1, 0}, mono.A}].first = c;
        }
        for (auto& [mono, c] : l2) {
            int d = degree(mono);
            if (d == 0) {
                if (!(mono.m == I2{0, 1}) || c != 1) throw Error("scattering: degree-zero discrepancy");
                continue;
            }
            if (d > ord) continue;
            if (d < ord) throw Error("scattering: lower-order inconsistency");
            h[{mono.m - I2{0, 1}, mono.A}].second = c;
        }
        std::vector<std::tuple<I2, Mono, Z>> adds;
        for (auto& [mono, hv] : h) {
            if (sgn(hv.first) == 0 && sgn(hv.second) == 0) continue;
            if (mono.m.is_zero()) throw Error("scattering: discrepancy with zero exponent");
            I2 d = -primitive(mono.m);
            // the leading-order discrepancy is a derivation: h_e ∝ wedge(e, d̂)
            i64 w1 = wedge(I2{1, 0}, d), w2 = wedge(I2{0, 1}, d);
            if (hv.first * w2 != hv.second * w1) throw Error("scattering: discrepancy is not a wall term");
            i64 x, y;
            ext_gcd(-d.y, d.x, x, y); // wedge((x,y), d) = x d.y - y d.x
            // want x*d.y - y*d.x = 1
            I2 e{x, y};
            if (wedge(e, d) != 1) {
                e = I2{-x, -y};
                if (wedge(e, d) != 1) throw Error("scattering: no dual vector");
            }
            Z he = Z(static_cast<long>(e.x)) * hv.first + Z(static_cast<long>(e.y)) * hv.second;
            adds.emplace_back(d, mono, Z(-he));
        }
        for (auto& [d, mono, c] : adds) add_term(d, mono, c);
        sort_walls();
    }
}

// ---------------------------------------------------------------- broken lines

namespace {

struct Ctx {
    const ScatteringDiagram& D;
    I2 q;
    std::vector<BrokenLineEnd>* out;
    I2 mQ;
    DivisorClass phiq;
};

void dfs(Ctx& ctx, const V2& x, const I2& m, const DivisorClass& B, const Z& coeff, int deg, int bends) {
    // the remaining bends must bring m back to q
    if (!ctx.D.reachable_within(m - ctx.q, ctx.D.order() - deg)) return;
    const auto& walls = ctx.D.walls();
    V2 mq = m.q();
    int best = -1;
    Q best_s;
    for (std::size_t i = 0; i < walls.size(); ++i) {
        V2 d = walls[i].dir.q();
        Q md = wedge(mq, d);
        if (sgn(md) == 0) continue;
        Q s = wedge(d, x) / md;
        if (sgn(s) <= 0) continue;
        Q t = wedge(x, mq) / wedge(d, mq);
        if (sgn(t) <= 0) continue;
        if (best < 0 || s < best_s) {
            best = static_cast<int>(i);
            best_s = s;
        }
    }
    if (best < 0) {
        if (m == ctx.q) ctx.out->push_back({ctx.mQ, ctx.phiq + B, coeff, bends});
        return;
    }
    V2 y = x + mq * best_s;
    const Wall& w = walls[static_cast<std::size_t>(best)];
    // pass straight through
    dfs(ctx, y, m, B, coeff, deg, bends);
    i64 e = wedge(m, w.dir);
    if (e < 0) e = -e;
    const Series& fp = ctx.D.wall_power(static_cast<std::size_t>(best), e);
    for (auto& [t, c] : fp) {
        if (t.m.is_zero()) continue;
        int td = ctx.D.degree(t);
        if (deg + td > ctx.D.order()) continue;
        I2 prev = m - t.m;
        if (prev.is_zero()) continue;
        dfs(ctx, y, prev, B + t.A, coeff * c, deg + td, bends + 1);
    }
}

bool on_some_wall(const ScatteringDiagram& D, const V2& x) {
    for (auto& w : D.walls()) {
        V2 d = w.dir.q();
        if (sgn(wedge(d, x)) == 0 && sgn(d.x * x.x + d.y * x.y) >= 0) return true;
    }
    return false;
}

} // namespace

std::vector<BrokenLineEnd> broken_lines(const ScatteringDiagram& D, const I2& q, const V2& Q) {
    if (on_some_wall(D, Q)) throw InputError("endpoint lies on a wall");
    std::vector<BrokenLineEnd> out;
    DivisorClass zero = D.pair().zero();
    if (q.is_zero()) {
        out.push_back({I2{0, 0}, zero, Z(1), 0});
        return out;
    }
    DivisorClass phiq = D.phi()(q);
    for (const I2& s : D.reachable()) {
        I2 mQ = q + s;
        if (mQ.is_zero()) continue;
        if (sgn(wedge(Q, mQ.q())) == 0) throw InputError("endpoint parallel to a final exponent");
        Ctx ctx{D, q, &out, mQ, phiq};
        dfs(ctx, Q, mQ, zero, Z(1), 0, 0);
    }
    return out;
}

V2 generic_endpoint(const ScatteringDiagram& D, const I2& r, std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 12345);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        long a = static_cast<long>(rng() % 997) + 1, b = static_cast<long>(rng() % 991) + 1;
        if (rng() & 1) a = -a;
        if (rng() & 1) b = -b;
        Q scale(1, 1000003);
        V2 Qp = r.q() + V2(Q(a) * scale, Q(b) * scale);
        if (on_some_wall(D, Qp)) continue;
        return Qp;
    }
    throw Error("no generic endpoint found");
}

WeightVector plane_weight(const LooijengaPair& p, const I2& x) {
    if (x.is_zero()) return WeightVector(static_cast<std::size_t>(p.n()), 0);
    const auto& rays = p.toric_model().rays;
    std::size_t n = rays.size();
    for (std::size_t i = 0; i < n; ++i) {
        const I2& a = rays[i];
        const I2& b = rays[(i + 1) % n];
        if (wedge(a, x) >= 0 && wedge(x, b) > 0)
            return point_weight(static_cast<int>(n), static_cast<int>(i), wedge(x, b), wedge(a, x));
    }
    throw Error("point outside the fan");
}

ClassSum structure_constant(const ScatteringDiagram& D, const I2& p, const I2& q, const I2& r, std::uint64_t seed) {
    ClassSum out;
    const LooijengaPair& P = D.pair();
    for (std::uint64_t attempt = 0;; ++attempt) {
        V2 Qp = generic_endpoint(D, r, seed + attempt * 7919);
        try {
            auto lp = broken_lines(D, p, Qp);
            auto lq = broken_lines(D, q, Qp);
            DivisorClass phir = D.phi()(r);
            for (auto& a : lp)
                for (auto& b : lq) {
                    if (!(a.m + b.m == r)) continue;
                    DivisorClass C = a.A + b.A - phir;
                    if (D.degree({I2{}, C}) > D.order()) continue;
                    out[C] += a.coeff * b.coeff;
                }
            break;
        } catch (const InputError&) {
            if (attempt > 50) throw;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (sgn(it->second) == 0) {
            it = out.erase(it);
            continue;
        }
        g_terms.fetch_add(1, std::memory_order_relaxed);
        WeightVector lhs = plane_weight(P, r), w = P.weight(it->first);
        WeightVector rhs = plane_weight(P, p), wq = plane_weight(P, q);
        for (std::size_t k = 0; k < lhs.size(); ++k) {
            lhs[k] += w[k];
            rhs[k] += wq[k];
        }
        if (lhs != rhs) g_violations.fetch_add(1, std::memory_order_relaxed);
        ++it;
    }
    return out;
}

ThetaExpansion theta_product(const ScatteringDiagram& D, const I2& p, const I2& q, std::uint64_t seed) {
    ThetaExpansion out;
    std::set<I2> rs;
    for (auto& s : D.reachable()) rs.insert(p + q + s);
    for (auto& r : rs) {
        ClassSum a = structure_constant(D, p, q, r, seed);
        if (!a.empty()) out[r] = a;
    }
    return out;
}

ThetaExpansion multiply(const ScatteringDiagram& D, const ThetaExpansion& f, const ThetaExpansion& g) {
    ThetaExpansion out;
    for (auto& [p, cp] : f)
        for (auto& [q, cq] : g) {
            ThetaExpansion pq = theta_product(D, p, q);
            for (auto& [r, cr] : pq)
                for (auto& [A, a] : cp)
                    for (auto& [B, b] : cq)
                        for (auto& [C, c] : cr) {
                            DivisorClass T = A + B + C;
                            if (D.degree({I2{}, T}) > D.order()) continue;
                            out[r][T] += a * b * c;
                        }
        }
    for (auto it = out.begin(); it != out.end();) {
        auto& cs = it->second;
        for (auto jt = cs.begin(); jt != cs.end();) {
            if (sgn(jt->second) == 0)
                jt = cs.erase(jt);
            else
                ++jt;
        }
        if (cs.empty())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

ConservationStats conservation_stats() { return {g_terms.load(), g_violations.load()}; }
void reset_conservation_stats() {
    g_terms = 0;
    g_violations = 0;
}

// ---------------------------------------------------------------- order 0 on B

namespace {

// representations of a canonical point in the closed cone i
std::vector<V2> lifts(const AffineAtlas& A, const ChartPoint& x, int i) {
    std::vector<V2> out;
    if (x.p.is_zero()) {
        out.push_back(V2());
        return out;
    }
    int n = A.n();
    int c = A.mod(x.cone);
    bool on_ray = sgn(x.p.x) == 0 || sgn(x.p.y) == 0;
    if (!on_ray) {
        if (c == i) out.push_back(x.p);
        return out;
    }
    // canonical storage: ray 0 as (a,0) in cone 0, ray j >= 1 as (0,a) in cone j-1
    int ray = sgn(x.p.y) == 0 ? c : A.mod(c + 1);
    Q a = sgn(x.p.y) == 0 ? x.p.x : x.p.y;
    if (ray == i) out.push_back(V2(a, Q(0)));
    if (A.mod(i + 1) == ray && (n == 1 || ray != i)) out.push_back(V2(Q(0), a));
    if (n == 1 && out.size() == 1) out.push_back(V2(Q(0), a));
    return out;
}

int home_cone(const AffineAtlas& A, const ChartPoint& r) {
    if (r.p.is_zero()) return 0;
    if (sgn(r.p.x) == 0) return A.mod(r.cone + 1); // on the end ray: start of the next cone
    return A.mod(r.cone);
}

std::tuple<int, Q, Q> key_of(const ChartPoint& c) { return {c.cone, c.p.x, c.p.y}; }

} // namespace

i64 native_structure_constant(const AffineAtlas& A, const ChartPoint& p, const ChartPoint& q, const ChartPoint& r) {
    ChartPoint pc = A.canonical(p), qc = A.canonical(q), rc = A.canonical(r);
    int i = home_cone(A, rc);
    auto lr = lifts(A, rc, i);
    V2 target = lr.empty() ? V2() : lr.front();
    if (rc.p.is_zero()) target = V2();
    else if (sgn(rc.p.x) == 0 || sgn(rc.p.y) == 0) target = V2(sgn(rc.p.y) == 0 ? rc.p.x : rc.p.y, Q(0));
    i64 count = 0;
    for (auto& a : lifts(A, pc, i))
        for (auto& b : lifts(A, qc, i))
            if (a + b == target) ++count;
    return count;
}

NativeExpansion native_product(const AffineAtlas& A, const ChartPoint& p, const ChartPoint& q) {
    ChartPoint pc = A.canonical(p), qc = A.canonical(q);
    std::set<std::tuple<int, Q, Q>> cands;
    std::vector<ChartPoint> rs;
    for (int i = 0; i < A.n(); ++i)
        for (auto& a : lifts(A, pc, i))
            for (auto& b : lifts(A, qc, i)) {
                ChartPoint r = A.canonical({i, a + b});
                if (cands.insert(key_of(r)).second) rs.push_back(r);
            }
    NativeExpansion out;
    for (auto& r : rs) {
        i64 c = native_structure_constant(A, pc, qc, r);
        if (c != 0) out[key_of(r)] += c;
    }
    return out;
}

NativeExpansion native_theta(const AffineAtlas& A, const ChartPoint& p) {
    NativeExpansion e;
    e[key_of(A.canonical(p))] = 1;
    return e;
}

NativeExpansion native_multiply(const AffineAtlas& A, const NativeExpansion& f, const NativeExpansion& g) {
    NativeExpansion out;
    for (auto& [kp, cp] : f)
        for (auto& [kq, cq] : g) {
            ChartPoint p{std::get<0>(kp), V2(std::get<1>(kp), std::get<2>(kp))};
            ChartPoint q{std::get<0>(kq), V2(std::get<1>(kq), std::get<2>(kq))};
            for (auto& [kr, c] : native_product(A, p, q)) out[kr] += cp * cq * c;
        }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0)
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

std::string format_class_sum(const LooijengaPair& p, const ClassSum& c) {
    if (c.empty()) return "0";
    std::string s;
    for (auto& [A, v] : c) {
        Z a = abs(v);
        if (!s.empty()) s += sgn(v) < 0 ? " - " : " + ";
        else if (sgn(v) < 0) s += "-";
        if (a != 1) s += a.get_str() + " ";
        s += "z^[" + p.format_class(A) + "]";
    }
    return s;
}

} // namespace lcy
