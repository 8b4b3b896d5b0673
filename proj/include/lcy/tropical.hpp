#pragma once

#include "lcy/pair_model.hpp"
#include "lcy/polygon.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lcy {

// Laurent polynomial in X_i with Pic-class exponents: (X exponent, class) -> coefficient.
using SlabFunction = std::map<std::pair<i64, DivisorClass>, Z>;

struct Slab {
    int ray = 0, index = 0;
    Q inner, outer; // radii along the ray; outer < 0 means unbounded
    DivisorClass kink;
    SlabFunction f;
};

// B' drawn in the plane of the toric model fan. The focus-focus points o_ij sit on the rays;
// crossing ray i between o_ij and o_i(j+1) shears vectors by j times the ray generator.
class FocusFocusLayout {
  public:
    FocusFocusLayout() = default;
    FocusFocusLayout(const LooijengaPair& p, std::vector<std::vector<Q>> radii);

    const LooijengaPair& pair() const { return pair_; }
    int n() const { return pair_.n(); }
    int mod(int i) const { return pair_.mod(i); }
    const I2& ray(int i) const { return rays_[static_cast<std::size_t>(mod(i))]; }
    int blowups(int i) const { return static_cast<int>(radii_[static_cast<std::size_t>(mod(i))].size()); }
    const std::vector<Q>& radii(int i) const { return radii_[static_cast<std::size_t>(mod(i))]; }
    V2 singular_point(int i, int j) const; // j is 1-based
    Q loop_size(int i, int j) const;
    const std::vector<Slab>& slabs(int i) const { return slabs_[static_cast<std::size_t>(mod(i))]; }

    // slab index of a point of ray i at the given radius; throws on a singular point
    int slab_of(int i, const Q& radius) const;

    // cone containing x: {cone, ray} with ray >= 0 when x lies on that ray; throws at the origin
    struct Place {
        int cone = -1;
        int ray = -1;
        Q radius;
    };
    Place locate(const V2& x) const;

    // vector moved across ray i at slab j, from the cone before the ray to the cone after it (ccw)
    // or back (cw)
    I2 cross(int i, int slab, const I2& m, bool ccw) const;
    // ď_+ for ray i: vanishes on the ray, positive on the cone before it
    i64 dcheck(int i, const I2& m) const { return wedge(m, ray(i)); }

    V2 to_plane(int cone, const V2& bc) const;
    V2 to_cone(int cone, const V2& x) const;
    I2 vec_to_plane(int cone, const I2& bc) const;
    I2 vec_to_cone(int cone, const I2& x) const;

  private:
    LooijengaPair pair_;
    std::vector<I2> rays_;
    std::vector<std::vector<Q>> radii_;
    std::vector<std::vector<Slab>> slabs_;
};

// Default radii j/(l_i+1) unless given; throws InputError on colliding or non-positive radii.
FocusFocusLayout gs_layout(const LooijengaPair& p, const std::optional<std::vector<std::vector<Q>>>& radii = {});

// z^{κ_j'} f_j' = X^{j-j'} z^{κ_j} f_j for every pair of slabs of every ray
bool check_compatibility(const FocusFocusLayout& L);

// Parallel transport around a loop leaving slab j through the cone before ray i and returning
// through slab j' and the cone after it.
I2 monodromy(const FocusFocusLayout& L, int ray, int j, int j2, const I2& m);

struct CycleVertex {
    V2 at; // plane coordinates
    bool boundary = false;
};
struct CycleEdge {
    int tail = 0, head = 0;
    I2 xi; // in the chart of the cone containing the edge
};
// Closed path J -> ray -> other side -> ray -> J around o_ij, J = vertex.
struct FocusLoop {
    int ray = 0, singularity = 1; // 1-based singularity index
    int orientation = 1;          // +1 counterclockwise
    int vertex = 0;
    I2 xi; // carried on the first arc
};
struct TropicalCycle {
    std::string name;
    std::vector<CycleVertex> vertices;
    std::vector<CycleEdge> edges;
    std::vector<FocusLoop> loops;
};

// Loop record at o_ij delivering `net` (a multiple of ν_i) into the junction vertex.
FocusLoop focus_loop(const FocusFocusLayout& L, int ray, int j, int vertex, const V2& junction, const I2& net);

// Fully explicit form: loops replaced by their edges.
struct ExpandedVertex {
    V2 at;
    bool boundary = false;
    int cone = -1, ray = -1, slab = -1;
    Q radius;
    int origin = -1; // index in the cycle, or -1 for loop vertices
};
struct ExpandedEdge {
    int tail = 0, head = 0;
    I2 xi;
    int cone = 0;
};
struct ExpandedCycle {
    std::vector<ExpandedVertex> vertices;
    std::vector<ExpandedEdge> edges;
    std::vector<I2> loop_zeta; // net vector each loop delivers to its junction
};
ExpandedCycle expand(const FocusFocusLayout& L, const TropicalCycle& c);

struct BalanceReport {
    bool ok = true;
    std::vector<std::pair<int, I2>> residuals; // vertex of the cycle (or -1 - loop index), residual
    std::vector<int> non_primitive;            // edges of the expanded cycle
    std::vector<I2> loop_zeta;
};
BalanceReport check_balancing(const FocusFocusLayout& L, const TropicalCycle& c);

i64 tropical_intersection(const FocusFocusLayout& L, const TropicalCycle& a, const TropicalCycle& b, int shift = 0);

// t-exponent as a multiple of κ_{ρ_i} per ray
WeightVector c1_phi_pairing(const FocusFocusLayout& L, const TropicalCycle& c);
DivisorClass ronkin_sum(const FocusFocusLayout& L, const TropicalCycle& c);

struct PeriodMonomial {
    int sign = 1;
    WeightVector t_exponent; // coefficient of κ_{ρ_i}
    DivisorClass class_exponent;
    bool operator==(const PeriodMonomial& o) const = default;
};
PeriodMonomial period(const FocusFocusLayout& L, const TropicalCycle& c, bool marking_correction = true);
std::string format_period(const LooijengaPair& p, const PeriodMonomial& m);
// class exponent with z^{p*D̄_i} in place of each t^{κ_i}
DivisorClass period_class(const LooijengaPair& p, const PeriodMonomial& m);

struct ExceptionalOptions {
    int start_cone = -1; // cone of the boundary cell the cycle starts on; default the one before ray i
};
struct ExceptionalCycle {
    TropicalCycle cycle;
    std::vector<i64> divisor; // parallel divisor actually used
    int start_cone = 0;
    int ray_crossings = 0;
};
// Exceptional cycle around o_ij (j 1-based) starting on the edge of P(a) on the line parallel to
// ray i; a is rescaled until the cycle fits.
ExceptionalCycle exceptional_cycle(const FocusFocusLayout& L, int i, int j, const std::vector<i64>& a,
                                   ExceptionalOptions opt = {});
// Divisor for exceptional_cycle: the parallel configuration when it routes, otherwise the first
// a in [1,4]^n giving the fewest ray crossings.
std::vector<i64> exceptional_divisor(const FocusFocusLayout& L, int i, int j);
// cones holding a boundary cell of P(a) on the line parallel to ray i
std::vector<int> exceptional_start_cones(const FocusFocusLayout& L, int i, const std::vector<i64>& a);

struct Dp1Suite {
    LooijengaPair pair;
    FocusFocusLayout layout;
    std::vector<DivisorClass> basis; // β', β^1..β^7 classes
    std::vector<TropicalCycle> cycles;
    std::vector<std::vector<i64>> gram;
    std::vector<std::vector<i64>> class_gram;
    std::vector<PeriodMonomial> periods;
};
Dp1Suite dp1_suite();
// E8(-1) in the order β', β^1..β^7
std::vector<std::vector<i64>> e8_gram();

} // namespace lcy
