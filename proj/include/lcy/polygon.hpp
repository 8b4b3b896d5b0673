#pragma once

#include "lcy/affine.hpp"

#include <optional>
#include <vector>

namespace lcy {

// Intersection of generalized half spaces, stored cone by cone.
struct PolygonOnB {
    int n = 0;
    std::vector<PlanePolygon> pieces; // pieces[i] = F ∩ σ_i in (b,c)-coords, ccw, origin first
    std::vector<Q> ray_hits;          // F ∩ ρ_i = [0, r_i] v_i
    bool bounded = true;
    // outer boundary walked counterclockwise; a ray point is stored in the cone it starts
    std::vector<ChartPoint> chain;
    std::vector<ChartPoint> vertices; // subset of chain where the boundary bends
    std::vector<int> vertex_pos;      // index of each vertex in chain
};

struct PolygonEdge {
    int from = 0, to = 0;  // vertex indices
    I2 dir;                // primitive, in the chart of the start vertex's cone
    Q length;              // lattice length
    std::vector<int> lines; // indices of supporting lines
};

struct PolygonReport {
    bool bounded = false;
    bool convex = false;
    bool nonsingular = false;
    bool integral = false;
    bool zero_interior = false;
    bool supporting_edges = false;
    std::vector<bool> correct_corner; // per cone, empty without a divisor
    std::vector<i64> nef;             // W.D_k, empty without a divisor
    std::vector<PolygonEdge> edges;
    bool all() const;
};

// Clipping box side; a piece reaching it is unbounded.
Q clip_bound();

ImmersedLine parallel_line(const AffineAtlas& A, int k, const Q& a);
PolygonOnB intersect_half_spaces(const AffineAtlas& A, const std::vector<ImmersedLine>& lines);
inline PolygonOnB half_space(const AffineAtlas& A, const ImmersedLine& L) { return intersect_half_spaces(A, {L}); }
// Lines L_k parallel to ρ_k at distance a_k, one per ray.
std::vector<ImmersedLine> parallel_lines(const AffineAtlas& A, const std::vector<i64>& a);
PolygonOnB parallel_polygon(const std::vector<i64>& self_ints, const std::vector<i64>& a);

std::vector<PolygonEdge> polygon_edges(const AffineAtlas& A, const PolygonOnB& F,
                                       const std::vector<ImmersedLine>& lines);
PolygonReport polygon_checks(const std::vector<i64>& self_ints, const PolygonOnB& F,
                             const std::vector<ImmersedLine>& lines, const std::vector<i64>* a = nullptr);
bool point_in_polygon(const PolygonOnB& F, const ChartPoint& x);

std::optional<std::vector<i64>> find_parallel_configuration(const std::vector<i64>& self_ints);

// g(q) = b a_i + c a_{i+1}
Q height(const std::vector<i64>& a, const ChartPoint& q);

struct GradedElement {
    ChartPoint q; // canonical, integral
    int m = 0;
};
// Pairs (q, m) with q ∈ mF ∩ B(Z), 0 <= m <= M, ordered by m then by (cone, b, c).
std::vector<GradedElement> graded_basis(const AffineAtlas& A, const PolygonOnB& F, int M);

} // namespace lcy
