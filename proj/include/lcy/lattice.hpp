#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcy {

using Q = mpq_class;
using Z = mpz_class;
using i64 = std::int64_t;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : Error {
    using Error::Error;
};

// Exact rational plane vector.
struct V2 {
    Q x, y;
    V2() : x(0), y(0) {}
    V2(Q a, Q b) : x(std::move(a)), y(std::move(b)) {
        x.canonicalize();
        y.canonicalize();
    }
    V2 operator+(const V2& o) const { return {x + o.x, y + o.y}; }
    V2 operator-(const V2& o) const { return {x - o.x, y - o.y}; }
    V2 operator-() const { return {-x, -y}; }
    V2 operator*(const Q& s) const { return {x * s, y * s}; }
    bool operator==(const V2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const V2& o) const { return !(*this == o); }
    bool operator<(const V2& o) const { return x < o.x || (x == o.x && y < o.y); }
    bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }
    bool integral() const;
};

struct I2 {
    i64 x = 0, y = 0;
    I2 operator+(const I2& o) const { return {x + o.x, y + o.y}; }
    I2 operator-(const I2& o) const { return {x - o.x, y - o.y}; }
    I2 operator-() const { return {-x, -y}; }
    I2 operator*(i64 s) const { return {x * s, y * s}; }
    bool operator==(const I2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const I2& o) const { return !(*this == o); }
    bool operator<(const I2& o) const { return x < o.x || (x == o.x && y < o.y); }
    bool is_zero() const { return x == 0 && y == 0; }
    V2 q() const { return V2(Q(static_cast<long>(x)), Q(static_cast<long>(y))); }
};

// 2x2 integer matrix [[a,b],[c,d]] acting on column vectors.
struct M2 {
    i64 a = 1, b = 0, c = 0, d = 1;
    I2 operator*(const I2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    V2 operator*(const V2& v) const;
    M2 operator*(const M2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    bool operator==(const M2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
    i64 det() const { return a * d - b * c; }
    M2 inverse() const; // SL2 only
    static M2 identity() { return {}; }
};

Q wedge(const V2& u, const V2& v);
inline i64 wedge(const I2& u, const I2& v) { return u.x * v.y - u.y * v.x; }

i64 gcd64(i64 a, i64 b);
i64 lcm64(i64 a, i64 b);
Z floor_q(const Q& q);
Z ceil_q(const Q& q);
i64 to_i64(const Z& z);
i64 to_i64(const Q& q); // must be integral

// Primitive integral vector positively proportional to v.
I2 primitive(const V2& v);
I2 primitive(const I2& v);
// Lattice length of a rational vector with rational slope: v = len * primitive(v).
Q lattice_length(const V2& v);

// Counterclockwise vertex list.
using PlanePolygon = std::vector<V2>;

std::vector<I2> enumerate_lattice_points(const PlanePolygon& p);

struct PickData {
    Q area;
    i64 boundary = 0;
    i64 interior = 0;
};
PickData pick_data(const PlanePolygon& p);

Q signed_area2(const PlanePolygon& p); // twice the signed area

std::string fmt(const Q& q);
std::string fmt(const Z& z);
std::string fmt(const V2& v);
std::string fmt(const I2& v);
Q parse_rational(const std::string& s);

} // namespace lcy
