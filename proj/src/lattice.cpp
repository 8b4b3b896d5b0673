#include "lcy/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace lcy {

bool V2::integral() const { return x.get_den() == 1 && y.get_den() == 1; }

V2 M2::operator*(const V2& v) const {
    return {Q(a) * v.x + Q(b) * v.y, Q(c) * v.x + Q(d) * v.y};
}

M2 M2::inverse() const {
    if (det() != 1) throw Error("inverse: matrix not in SL2(Z)");
    return {d, -b, -c, a};
}

Q wedge(const V2& u, const V2& v) {
    Q r = u.x * v.y - u.y * v.x;
    r.canonicalize();
    return r;
}

i64 gcd64(i64 a, i64 b) { return std::gcd(a, b); }
i64 lcm64(i64 a, i64 b) { return (a == 0 || b == 0) ? 0 : std::lcm(a, b); }

Z floor_q(const Q& q) {
    Z r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Z ceil_q(const Q& q) {
    Z r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

i64 to_i64(const Z& z) {
    if (!z.fits_slong_p()) throw Error("integer overflow converting to int64");
    return z.get_si();
}

i64 to_i64(const Q& q) {
    if (q.get_den() != 1) throw Error("expected an integer, got " + fmt(q));
    return to_i64(Z(q.get_num()));
}

I2 primitive(const I2& v) {
    if (v.is_zero()) throw Error("primitive: zero vector");
    i64 g = gcd64(v.x, v.y);
    return {v.x / g, v.y / g};
}

I2 primitive(const V2& v) {
    if (v.is_zero()) throw Error("primitive: zero vector");
    Z l;
    mpz_lcm(l.get_mpz_t(), v.x.get_den_mpz_t(), v.y.get_den_mpz_t());
    Q sx = v.x * l, sy = v.y * l;
    Z nx = sx.get_num(), ny = sy.get_num();
    Z g;
    mpz_gcd(g.get_mpz_t(), nx.get_mpz_t(), ny.get_mpz_t());
    return {to_i64(Z(nx / g)), to_i64(Z(ny / g))};
}

Q lattice_length(const V2& v) {
    if (v.is_zero()) return Q(0);
    I2 p = primitive(v);
    Q r = p.x != 0 ? v.x / Q(p.x) : v.y / Q(p.y);
    r.canonicalize();
    return r;
}

Q signed_area2(const PlanePolygon& p) {
    Q s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += wedge(p[i], p[(i + 1) % p.size()]);
    s.canonicalize();
    return s;
}

std::vector<I2> enumerate_lattice_points(const PlanePolygon& p) {
    if (p.empty()) throw Error("enumerate_lattice_points: empty polygon");
    Q ymin = p[0].y, ymax = p[0].y;
    for (auto& v : p) {
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    std::vector<I2> out;
    i64 y0 = to_i64(ceil_q(ymin)), y1 = to_i64(floor_q(ymax));
    std::size_t n = p.size();
    for (i64 y = y0; y <= y1; ++y) {
        Q yq(y);
        bool any = false;
        Q lo, hi;
        auto take = [&](const Q& x) {
            if (!any) {
                lo = hi = x;
                any = true;
            } else {
                if (x < lo) lo = x;
                if (x > hi) hi = x;
            }
        };
        for (std::size_t i = 0; i < n; ++i) {
            const V2& a = p[i];
            const V2& b = p[(i + 1) % n];
            if (a.y == yq) take(a.x);
            if (a.y == b.y) continue;
            if ((a.y < yq && yq < b.y) || (b.y < yq && yq < a.y)) {
                Q t = (yq - a.y) / (b.y - a.y);
                take(a.x + t * (b.x - a.x));
            }
        }
        if (!any) continue;
        for (i64 x = to_i64(ceil_q(lo)), xe = to_i64(floor_q(hi)); x <= xe; ++x) out.push_back({x, y});
    }
    std::sort(out.begin(), out.end());
    return out;
}

PickData pick_data(const PlanePolygon& p) {
    for (auto& v : p)
        if (!v.integral()) throw Error("pick_data: non-integral vertex " + fmt(v));
    Q a2 = signed_area2(p);
    if (sgn(a2) == 0) throw Error("pick_data: degenerate polygon");
    PickData d;
    d.area = abs(a2) / 2;
    for (std::size_t i = 0; i < p.size(); ++i) {
        I2 e{to_i64(p[(i + 1) % p.size()].x - p[i].x), to_i64(p[(i + 1) % p.size()].y - p[i].y)};
        d.boundary += std::abs(gcd64(e.x, e.y));
    }
    // Pick: A = I + B/2 - 1
    Q half(Z(static_cast<long>(d.boundary)), Z(2));
    half.canonicalize();
    Q inter = d.area - half + 1;
    d.interior = to_i64(inter);
    return d;
}

std::string fmt(const Z& z) { return z.get_str(); }

std::string fmt(const Q& q) {
    Q c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string fmt(const V2& v) { return "(" + fmt(v.x) + "," + fmt(v.y) + ")"; }
std::string fmt(const I2& v) { return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")"; }

Q parse_rational(const std::string& s) {
    try {
        Q q(s);
        if (q.get_den() == 0) throw InputError("bad rational '" + s + "'");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw InputError("bad rational '" + s + "'");
    }
}

} // namespace lcy
