#pragma once

#include "lcy/pair_model.hpp"
#include "lcy/polygon.hpp"

#include <optional>
#include <set>
#include <vector>

namespace lcy {

enum class EdgeKind { Gluing, Boundary };

// Edge of a moment polygon, i.e. a torus-invariant curve of its toric surface.
struct FiberEdge {
    EdgeKind kind = EdgeKind::Boundary;
    int ray = -1;           // Gluing: ray of B it lies on
    std::vector<int> lines; // Boundary: supporting lines of F
    V2 from, to;
    I2 normal; // inward primitive normal
    Q height;  // polygon is <normal, x> >= -height
};

struct FiberComponent {
    int cone = 0;
    PlanePolygon poly; // ccw, origin first, (b,c)-coordinates of the cone
    std::vector<FiberEdge> edges;
    bool smooth = true; // unimodular normal fan
};

// Union of toric surfaces, one per 2-cell of Σ ∩ F, glued along the rays.
struct CentralFiber {
    int n = 0;
    std::vector<FiberComponent> components;
    int gluing_curves = 0;
    int boundary_curves = 0;
};

CentralFiber build_central_fiber(const AffineAtlas& A, const PolygonOnB& F, const std::vector<ImmersedLine>& lines);

// Fiber for the polygon cut out by lines parallel to the rays at distances a. A one-component
// cycle is replaced by its blowup at the node first (self-intersections (D²-4, -1), line kept on ray 0).
struct ParallelFiber {
    std::vector<i64> self_ints; // of the pair actually used
    std::vector<ImmersedLine> lines;
    PolygonOnB polygon;
    CentralFiber fiber;
};
ParallelFiber parallel_fiber(const std::vector<i64>& self_ints, const std::vector<i64>& a);

// Toric divisor data of a component: coefficient per edge.
std::vector<i64> restricted_coefficients(const FiberComponent& X, const std::set<int>& lines, i64 c);
// D·D_e for every edge of the component.
std::vector<Q> restricted_degrees(const FiberComponent& X, const std::vector<i64>& coeff);
// χ by Riemann-Roch on the toric surface; throws InputError when the divisor is not Cartier.
i64 component_chi(const FiberComponent& X, const std::vector<i64>& coeff);
// lattice points of the divisor polytope, when the divisor is nef
std::optional<i64> component_lattice_count(const FiberComponent& X, const std::vector<i64>& coeff);

struct EulerReport {
    i64 chi = 0;
    std::vector<i64> component_chi;
    std::vector<std::optional<i64>> component_lattice;
    std::vector<i64> gluing_degree; // per ray
    i64 overlap_chi = 0;            // χ on the union of the gluing curves
    bool gluing_consistent = true;
    bool all_nef = true;
    std::optional<i64> lattice_chi; // same assembly with lattice counts, when every piece is nef
};

// χ(X_0, O(c·D_E)) with D_E the boundary curves on the given lines.
EulerReport euler_characteristic(const CentralFiber& X, const std::set<int>& lines, i64 c);

struct BoundaryDegree {
    int component = 0;
    int edge = 0;
    std::vector<int> lines;
    Q degree;
};
// Multidegree (L·Z) of O(c·D_E) on the boundary curves Z; the restriction to the boundary is
// Σ (L·Z)(-1_Z). Zero entries are dropped.
std::vector<BoundaryDegree> toric_period_point(const CentralFiber& X, const std::set<int>& lines, i64 c);
// Σ of the multidegree over the curves of each line.
std::vector<Q> line_degrees(const CentralFiber& X, const std::set<int>& lines, i64 c, int num_lines);

// e_{i-1} + D_i² e_i + e_{i+1}, or D² e for n = 1
WeightVector boundary_period_weight(const std::vector<i64>& self_ints, int i);

} // namespace lcy
