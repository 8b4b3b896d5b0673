#include "lcy/pair_model.hpp"

#include <algorithm>
#include <numeric>

namespace lcy {

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    if (a.size() != b.size()) throw Error("class size mismatch");
    DivisorClass r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
    if (a.size() != b.size()) throw Error("class size mismatch");
    DivisorClass r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

DivisorClass operator*(i64 s, const DivisorClass& a) {
    DivisorClass r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

const ToricModel& LooijengaPair::toric_model() const {
    if (!tm_) throw InputError("pair has no toric model");
    return *tm_;
}

i64 LooijengaPair::dd(int i, int j) const {
    int a = mod(i), b = mod(j);
    int m = n();
    if (a == b) return self_ints_[static_cast<std::size_t>(a)];
    if (m == 2) return 2;
    if (mod(a + 1) == b || mod(b + 1) == a) return 1;
    return 0;
}

i64 charge_of(const std::vector<i64>& s) {
    i64 sum = std::accumulate(s.begin(), s.end(), i64{0});
    i64 n = static_cast<i64>(s.size());
    if (n == 1) return 11 - sum;
    return 12 - sum - 3 * n;
}

i64 LooijengaPair::charge() const { return charge_of(self_ints_); }

std::vector<i64> toric_self_ints(const std::vector<I2>& rays) {
    std::size_t n = rays.size();
    std::vector<i64> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const I2& prev = rays[(i + n - 1) % n];
        const I2& next = rays[(i + 1) % n];
        out[i] = -wedge(prev, next);
    }
    return out;
}

void validate_fan(const std::vector<I2>& rays) {
    std::size_t n = rays.size();
    if (n < 3) throw InputError("toric fan needs at least 3 rays");
    for (auto& r : rays)
        if (r.is_zero()) throw InputError("zero ray in fan");
    for (std::size_t i = 0; i < n; ++i) {
        if (wedge(rays[i], rays[(i + 1) % n]) != 1)
            throw InputError("fan not smooth and counterclockwise at rays " + std::to_string(i + 1) +
                             "," + std::to_string((i + 1) % n + 1));
    }
    // count cones [m_i, m_{i+1}) containing (1,0): the fan must wind once
    int hits = 0;
    I2 e{1, 0};
    for (std::size_t i = 0; i < n; ++i) {
        const I2& a = rays[i];
        const I2& b = rays[(i + 1) % n];
        if (wedge(a, e) >= 0 && wedge(e, b) > 0) ++hits;
    }
    if (hits != 1) throw InputError("fan rays do not wind exactly once around the origin");
}

namespace {

std::vector<std::vector<std::string>> default_labels(const std::vector<int>& l) {
    std::vector<std::vector<std::string>> out(l.size());
    for (std::size_t i = 0; i < l.size(); ++i)
        for (int j = 0; j < l[i]; ++j)
            out[i].push_back("E_{" + std::to_string(i + 1) + std::to_string(j + 1) + "}");
    return out;
}

} // namespace

void LooijengaPair::init_pic() {
    const auto& rays = tm_->rays;
    const auto& l = tm_->blowups;
    int m = static_cast<int>(rays.size());
    dbar_self_ = toric_self_ints(rays);
    exc_offset_.assign(static_cast<std::size_t>(m), 0);
    total_l_ = 0;
    for (int i = 0; i < m; ++i) {
        exc_offset_[static_cast<std::size_t>(i)] = (m - 2) + total_l_;
        total_l_ += l[static_cast<std::size_t>(i)];
    }
    int rank = (m - 2) + total_l_;

    // full Gram on D̄_0..D̄_{m-1}, E's
    int full = m + total_l_;
    std::vector<std::vector<i64>> g(static_cast<std::size_t>(full), std::vector<i64>(static_cast<std::size_t>(full), 0));
    for (int i = 0; i < m; ++i) {
        g[i][i] = dbar_self_[static_cast<std::size_t>(i)];
        int j = (i + 1) % m;
        g[i][j] = g[j][i] = 1;
    }
    for (int k = m; k < full; ++k) g[k][k] = -1;
    gram_.assign(static_cast<std::size_t>(rank), std::vector<i64>(static_cast<std::size_t>(rank), 0));
    for (int a = 0; a < rank; ++a)
        for (int b = 0; b < rank; ++b) gram_[a][b] = g[a + 2][b + 2];

    // D̄_a = -Σ_{i>=2} <m^a, m̄_i> D̄_i for a = 0, 1
    dbar_nf_.assign(static_cast<std::size_t>(m), DivisorClass(static_cast<std::size_t>(rank), 0));
    for (int i = 2; i < m; ++i) dbar_nf_[i][i - 2] = 1;
    const I2& m0 = rays[0];
    const I2& m1 = rays[1];
    for (int i = 2; i < m; ++i) {
        dbar_nf_[0][i - 2] = -wedge(rays[i], m1);
        dbar_nf_[1][i - 2] = -wedge(m0, rays[i]);
    }
}

int LooijengaPair::exc_index(int i, int j) const {
    if (!tm_) throw InputError("pair has no toric model");
    int a = mod(i);
    if (j < 0 || j >= tm_->blowups[static_cast<std::size_t>(a)])
        throw InputError("no exceptional curve E_" + std::to_string(a + 1) + "," + std::to_string(j + 1));
    return exc_offset_[static_cast<std::size_t>(a)] + j;
}

DivisorClass LooijengaPair::dbar(int i) const {
    if (!tm_) throw InputError("pair has no toric model");
    return dbar_nf_[static_cast<std::size_t>(mod(i))];
}

DivisorClass LooijengaPair::exc(int i, int j) const {
    DivisorClass c = zero();
    c[static_cast<std::size_t>(exc_index(i, j))] = 1;
    return c;
}

DivisorClass LooijengaPair::boundary(int i) const {
    DivisorClass c = dbar(i);
    int a = mod(i);
    for (int j = 0; j < tm_->blowups[static_cast<std::size_t>(a)]; ++j) c[static_cast<std::size_t>(exc_index(a, j))] -= 1;
    return c;
}

i64 LooijengaPair::intersect(const DivisorClass& a, const DivisorClass& b) const {
    if (a.size() != gram_.size() || b.size() != gram_.size()) throw Error("intersect: class size mismatch");
    i64 s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * gram_[i][j] * b[j];
    }
    return s;
}

i64 LooijengaPair::e_degree(const DivisorClass& c) const {
    i64 s = 0;
    for (std::size_t k = static_cast<std::size_t>(n() - 2); k < c.size(); ++k) s += c[k];
    return s;
}

WeightVector LooijengaPair::weight(const DivisorClass& c) const {
    WeightVector w(static_cast<std::size_t>(n()));
    for (int i = 0; i < n(); ++i) w[static_cast<std::size_t>(i)] = intersect(c, boundary(i));
    return w;
}

DivisorClass LooijengaPair::reduce(const std::vector<i64>& full) const {
    if (static_cast<int>(full.size()) != n() + total_l_) throw Error("reduce: wrong length");
    DivisorClass c(full.begin() + 2, full.end());
    for (int a = 0; a < 2; ++a)
        if (full[a] != 0) c = c + full[a] * dbar_nf_[a];
    return c;
}

std::string LooijengaPair::format_class(const DivisorClass& c) const {
    std::string out;
    auto term = [&](i64 v, const std::string& name) {
        if (v == 0) return;
        if (out.empty()) {
            if (v < 0) out += "-";
        } else {
            out += v < 0 ? " - " : " + ";
        }
        i64 a = v < 0 ? -v : v;
        if (a != 1) out += std::to_string(a) + " ";
        out += name;
    };
    int m = n();
    for (int i = 2; i < m; ++i) term(c[i - 2], "Dbar_" + std::to_string(i + 1));
    for (int i = 0; i < m; ++i)
        for (std::size_t j = 0; j < labels_[i].size(); ++j) term(c[exc_index(i, static_cast<int>(j))], labels_[i][j]);
    return out.empty() ? "0" : out;
}

LooijengaPair build_pair(const std::vector<i64>& self_ints, const std::optional<ToricModel>& tm,
                         const std::vector<std::vector<std::string>>* labels) {
    LooijengaPair p;
    if (tm) {
        validate_fan(tm->rays);
        if (tm->blowups.size() != tm->rays.size()) throw InputError("blowups_per_ray length differs from fan_rays");
        for (int l : tm->blowups)
            if (l < 0) throw InputError("negative blowup count");
        p.tm_ = tm;
        std::vector<i64> s = toric_self_ints(tm->rays);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] -= tm->blowups[i];
        if (!self_ints.empty() && self_ints != s) throw InputError("self-intersections disagree with toric model");
        p.self_ints_ = s;
        p.init_pic();
        auto def = default_labels(tm->blowups);
        if (labels) {
            if (labels->size() != tm->blowups.size()) throw InputError("exceptional_labels length differs from fan_rays");
            for (std::size_t i = 0; i < labels->size(); ++i)
                if (static_cast<int>((*labels)[i].size()) != tm->blowups[i])
                    throw InputError("exceptional_labels[" + std::to_string(i) + "] has wrong length");
            p.labels_ = *labels;
        } else {
            p.labels_ = def;
        }
        p.custom_labels_ = p.labels_ != def;
        i64 sum_l = std::accumulate(tm->blowups.begin(), tm->blowups.end(), i64{0});
        if (sum_l != p.charge()) throw Error("charge bookkeeping failed: sum l = " + std::to_string(sum_l) +
                                             ", charge = " + std::to_string(p.charge()));
    } else {
        if (self_ints.empty()) throw InputError("empty boundary cycle");
        p.self_ints_ = self_ints;
    }
    return p;
}

LooijengaPair pair_from_self_ints(const std::vector<i64>& self_ints) { return build_pair(self_ints, std::nullopt); }

LooijengaPair pair_from_fan(const std::vector<I2>& rays, const std::vector<int>& l) {
    return build_pair({}, ToricModel{rays, l});
}

std::vector<std::vector<i64>> boundary_matrix(const std::vector<i64>& s) {
    std::size_t n = s.size();
    std::vector<std::vector<i64>> m(n, std::vector<i64>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = s[i];
        if (n == 2) {
            m[i][1 - i] = 2;
        } else if (n >= 3) {
            m[i][(i + 1) % n] = 1;
            m[i][(i + n - 1) % n] = 1;
        }
    }
    return m;
}

std::vector<i64> divisor_degrees(const std::vector<i64>& s, const std::vector<i64>& a) {
    auto m = boundary_matrix(s);
    std::vector<i64> out(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) out[i] += m[i][j] * a[j];
    return out;
}

namespace {

// Phase-1 simplex with Bland's rule over exact rationals.
// Finds x >= 0 with A x >= b, or reports infeasible.
std::optional<std::vector<Q>> feasible_point(const std::vector<std::vector<Q>>& A, const std::vector<Q>& b) {
    std::size_t m = A.size(), nv = A.empty() ? 0 : A[0].size();
    // columns: x (nv), surplus (m), artificial (m), rhs
    std::size_t cols = nv + 2 * m + 1;
    std::vector<std::vector<Q>> t(m + 1, std::vector<Q>(cols, Q(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        Q sgnr = b[i] < 0 ? Q(-1) : Q(1);
        for (std::size_t j = 0; j < nv; ++j) t[i][j] = sgnr * A[i][j];
        t[i][nv + i] = -sgnr;
        t[i][nv + m + i] = 1;
        t[i][cols - 1] = sgnr * b[i];
        basis[i] = nv + m + i;
    }
    // objective row: minimise sum of artificials, stored as reduced costs
    for (std::size_t j = 0; j < cols; ++j) {
        Q s = 0;
        for (std::size_t i = 0; i < m; ++i) s += t[i][j];
        t[m][j] = (j >= nv + m && j < nv + 2 * m) ? Q(0) : s;
    }
    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j + 1 < cols; ++j)
            if (t[m][j] > 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        std::size_t leave = m;
        Q best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Q ratio = t[i][cols - 1] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break; // unbounded in phase 1 cannot happen
        Q piv = t[leave][enter];
        for (auto& v : t[leave]) v /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave || sgn(t[i][enter]) == 0) continue;
            Q f = t[i][enter];
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    if (sgn(t[m][cols - 1]) != 0) return std::nullopt;
    std::vector<Q> x(nv, Q(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < nv) x[basis[i]] = t[i][cols - 1];
    return x;
}

struct WitnessSearch {
    const std::vector<std::vector<i64>>& M;
    std::size_t n;
    i64 B;
    std::vector<i64> a;
    std::vector<i64> partial; // row sums over assigned coordinates

    bool dfs(std::size_t k, bool hit) {
        if (k == n) {
            if (!hit) return false;
            for (std::size_t j = 0; j < n; ++j)
                if (partial[j] <= 0) return false;
            return true;
        }
        for (i64 v = 1; v <= B; ++v) {
            a[k] = v;
            for (std::size_t j = 0; j < n; ++j) partial[j] += M[j][k] * v;
            bool ok = hit || v == B || k + 1 < n;
            if (ok) {
                for (std::size_t j = 0; j < n && ok; ++j) {
                    i64 best = partial[j];
                    for (std::size_t r = k + 1; r < n; ++r) best += M[j][r] > 0 ? M[j][r] * B : M[j][r];
                    if (best <= 0) ok = false;
                }
            }
            if (ok && dfs(k + 1, hit || v == B)) return true;
            for (std::size_t j = 0; j < n; ++j) partial[j] -= M[j][k] * v;
        }
        return false;
    }
};

} // namespace

PositivityResult is_positive(const std::vector<i64>& s, PositivityOptions opt) {
    if (s.empty()) throw InputError("empty boundary cycle");
    auto M = boundary_matrix(s);
    std::size_t n = s.size();
    PositivityResult res;
    // substitute a = 1 + x, x >= 0: M x >= 1 - M·1
    std::vector<std::vector<Q>> A(n, std::vector<Q>(n));
    std::vector<Q> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        i64 row = 0;
        for (std::size_t j = 0; j < n; ++j) {
            A[i][j] = Q(static_cast<long>(M[i][j]));
            row += M[i][j];
        }
        b[i] = Q(static_cast<long>(1 - row));
    }
    auto x = feasible_point(A, b);
    if (!x) {
        res.status = PositivityStatus::NotPositive;
        return res;
    }
    res.lp_point.resize(n);
    Z den = 1;
    for (std::size_t i = 0; i < n; ++i) {
        res.lp_point[i] = (*x)[i] + 1;
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), res.lp_point[i].get_den_mpz_t());
    }
    std::vector<i64> scaled(n);
    i64 bound = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Q v = res.lp_point[i] * den;
        scaled[i] = to_i64(v);
        bound = std::max(bound, scaled[i]);
    }
    i64 top = std::min(bound, opt.search_cap);
    for (i64 B = 1; B <= top; ++B) {
        WitnessSearch ws{M, n, B, std::vector<i64>(n, 0), std::vector<i64>(n, 0)};
        if (ws.dfs(0, false)) {
            res.status = PositivityStatus::Positive;
            res.witness = ws.a;
            return res;
        }
    }
    res.witness = scaled;
    res.status = bound <= opt.search_cap ? PositivityStatus::Positive : PositivityStatus::BoundExhausted;
    return res;
}

LooijengaPair toric_blowup(const LooijengaPair& p, int node) {
    int n = p.n();
    int k = p.mod(node);
    std::vector<i64> s = p.self_ints();
    std::vector<i64> out;
    if (n == 1) {
        out = {s[0] - 4, -1};
    } else {
        out = s;
        out[static_cast<std::size_t>(k)] -= 1;
        out[static_cast<std::size_t>((k + 1) % n)] -= 1;
        out.insert(out.begin() + k + 1, -1);
    }
    LooijengaPair r;
    if (p.has_toric_model()) {
        ToricModel tm = p.toric_model();
        I2 v = tm.rays[static_cast<std::size_t>(k)] + tm.rays[static_cast<std::size_t>((k + 1) % n)];
        tm.rays.insert(tm.rays.begin() + k + 1, v);
        tm.blowups.insert(tm.blowups.begin() + k + 1, 0);
        auto labels = p.labels();
        labels.insert(labels.begin() + k + 1, std::vector<std::string>{});
        r = build_pair(out, tm, &labels);
    } else {
        r = build_pair(out, std::nullopt);
    }
    r.name_ = p.name_;
    r.history_ = p.history_;
    return r;
}

LooijengaPair toric_blowdown(const LooijengaPair& p, int idx) {
    int n = p.n();
    int i = p.mod(idx);
    if (n < 2) throw InputError("cannot blow down the only boundary component");
    if (p.self_int(i) != -1) throw InputError("component " + std::to_string(i + 1) + " is not a (-1)-curve");
    std::vector<i64> s = p.self_ints();
    std::vector<i64> out;
    if (n == 2) {
        out = {s[static_cast<std::size_t>(1 - i)] + 4};
    } else {
        out = s;
        out[static_cast<std::size_t>((i + n - 1) % n)] += 1;
        out[static_cast<std::size_t>((i + 1) % n)] += 1;
        out.erase(out.begin() + i);
    }
    LooijengaPair r;
    bool keep = p.has_toric_model() && n >= 4 && p.toric_model().blowups[static_cast<std::size_t>(i)] == 0 &&
                p.dbar_self(i) == -1;
    if (keep) {
        ToricModel tm = p.toric_model();
        tm.rays.erase(tm.rays.begin() + i);
        tm.blowups.erase(tm.blowups.begin() + i);
        auto labels = p.labels();
        labels.erase(labels.begin() + i);
        r = build_pair(out, tm, &labels);
    } else {
        r = build_pair(out, std::nullopt);
    }
    r.name_ = p.name_;
    r.history_ = p.history_;
    r.history_.push_back(i);
    return r;
}

CanonicalResult blowdown_to_canonical(const LooijengaPair& p) {
    CanonicalResult res{p, CanonicalTag::DP1, {}};
    for (;;) {
        const auto& s = res.pair.self_ints();
        int n = res.pair.n();
        if (n == 1) break;
        if (std::any_of(s.begin(), s.end(), [](i64 v) { return v >= 0; })) break;
        auto it = std::find(s.begin(), s.end(), i64{-1});
        if (it == s.end()) break;
        int i = static_cast<int>(it - s.begin());
        res.steps.push_back(i);
        res.pair = toric_blowdown(res.pair, i);
    }
    const auto& s = res.pair.self_ints();
    bool parallel = res.pair.n() >= 2 ? std::any_of(s.begin(), s.end(), [](i64 v) { return v >= 0; }) : s[0] >= 2;
    res.tag = parallel ? CanonicalTag::ParallelConfiguration : CanonicalTag::DP1;
    return res;
}

WeightVector point_weight(int n, int cone, i64 b, i64 c) {
    WeightVector w(static_cast<std::size_t>(n), 0);
    int i = ((cone % n) + n) % n;
    w[static_cast<std::size_t>(i)] += b;
    w[static_cast<std::size_t>((i + 1) % n)] += c;
    return w;
}

} // namespace lcy
