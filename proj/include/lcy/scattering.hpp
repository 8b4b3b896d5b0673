#pragma once

#include "lcy/affine.hpp"
#include "lcy/pair_model.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace lcy {

// Monomial z^{(m, A)}: plane exponent m and curve class A.
struct Mono {
    I2 m;
    DivisorClass A;
    bool operator<(const Mono& o) const { return m < o.m || (m == o.m && A < o.A); }
    bool operator==(const Mono& o) const { return m == o.m && A == o.A; }
};

using Series = std::map<Mono, Z>;
using ClassSum = std::map<DivisorClass, Z>; // Σ c z^C

// Piecewise linear φ̄ on the toric fan with values in Pic(Y).
class PLFunction {
  public:
    // kinks κ_i = p*D̄_i, normalised to vanish on the last cone
    explicit PLFunction(const LooijengaPair& p);
    // gauge change: add ℓ(x)·G everywhere; G should have exceptional degree 0 so the truncation is unchanged
    PLFunction with_gauge(I2 ell, const DivisorClass& G) const;

    int cone_of(const I2& x) const;  // half-open cone [m̄_i, m̄_{i+1}) containing x ≠ 0
    int cone_of(const V2& x) const;
    DivisorClass operator()(const I2& x) const;
    const DivisorClass& kink(int i) const { return kinks_[static_cast<std::size_t>(i)]; }
    const std::vector<I2>& rays() const { return rays_; }

  private:
    std::vector<I2> rays_;
    std::vector<DivisorClass> kinks_;
    std::vector<DivisorClass> lin_x_, lin_y_; // L_i(e1), L_i(e2)
};

struct Wall {
    I2 dir;   // primitive direction of the ray
    Series f; // 1 + Σ c z^{(m,A)}, every m a negative multiple of dir
    bool initial = false;
};

class ScatteringDiagram {
  public:
    ScatteringDiagram(const LooijengaPair& p, const PLFunction& phi, int order);

    const LooijengaPair& pair() const { return *pair_; }
    const PLFunction& phi() const { return phi_; }
    int order() const { return order_; }
    const std::vector<Wall>& walls() const { return walls_; }
    std::vector<Wall> scattered_walls() const;

    // truncated arithmetic
    int degree(const Mono& m) const;
    Series mul(const Series& a, const Series& b) const;
    Series power(const Series& f, i64 e) const;
    Series apply_wall(const Wall& w, const Series& s) const;
    const Series& wall_power(std::size_t wall, i64 e) const; // cached f^e for walls()[wall]
    // plane exponents reachable as sums of wall terms of total degree <= order
    const std::vector<I2>& reachable() const;
    bool reachable_within(const I2& s, int budget) const;
    // composition of all wall crossings on a counterclockwise loop around 0
    Series loop(const Series& s) const;
    bool consistent() const;

    // used by tests: add a line wall through 0 and rebuild consistency up to `order`
    static ScatteringDiagram from_walls(const LooijengaPair& p, const PLFunction& phi, std::vector<Wall> lines,
                                        int order);

  private:
    ScatteringDiagram(const LooijengaPair& p, const PLFunction& phi, int order, std::vector<Wall> init);
    void complete();
    void add_term(const I2& dir, const Mono& mono, const Z& c);
    void sort_walls();

    const LooijengaPair* pair_;
    PLFunction phi_;
    int order_;
    int e_start_;
    std::vector<Wall> walls_;
    mutable std::map<std::pair<std::size_t, i64>, Series> pow_cache_;
    mutable std::vector<I2> reachable_;
    mutable std::vector<std::set<I2>> reachable_cum_;
    mutable bool reachable_done_ = false;
};

std::vector<Wall> initial_walls(const LooijengaPair& p, const PLFunction& phi);

struct BrokenLineEnd {
    I2 m;           // final exponent
    DivisorClass A; // φ̄(q) plus the bend classes
    Z coeff;
    int bends = 0;
};

std::vector<BrokenLineEnd> broken_lines(const ScatteringDiagram& D, const I2& q, const V2& Q);

// Generic endpoint near r, drawn deterministically from seed.
V2 generic_endpoint(const ScatteringDiagram& D, const I2& r, std::uint64_t seed);

// α(p,q,r) as Σ c z^C, truncated at exceptional degree ≤ order.
ClassSum structure_constant(const ScatteringDiagram& D, const I2& p, const I2& q, const I2& r,
                            std::uint64_t seed = 0);

using ThetaExpansion = std::map<I2, ClassSum>; // Σ_q (Σ c z^C) θ_q

ThetaExpansion theta_product(const ScatteringDiagram& D, const I2& p, const I2& q, std::uint64_t seed = 0);
ThetaExpansion multiply(const ScatteringDiagram& D, const ThetaExpansion& f, const ThetaExpansion& g);

// Weight of a plane point through the toric fan.
WeightVector plane_weight(const LooijengaPair& p, const I2& x);

struct ConservationStats {
    std::uint64_t terms = 0;
    std::uint64_t weight_violations = 0;
};
ConservationStats conservation_stats();
void reset_conservation_stats();

// Order-0 multiplication on B itself: straight broken lines only.
using NativeExpansion = std::map<std::tuple<int, Q, Q>, i64>; // canonical (cone, b, c) -> coefficient
i64 native_structure_constant(const AffineAtlas& A, const ChartPoint& p, const ChartPoint& q, const ChartPoint& r);
NativeExpansion native_product(const AffineAtlas& A, const ChartPoint& p, const ChartPoint& q);
NativeExpansion native_multiply(const AffineAtlas& A, const NativeExpansion& f, const NativeExpansion& g);
NativeExpansion native_theta(const AffineAtlas& A, const ChartPoint& p);

std::string format_class_sum(const LooijengaPair& p, const ClassSum& c);

} // namespace lcy
