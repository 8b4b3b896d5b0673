#pragma once

#include "lcy/lattice.hpp"

#include <vector>

namespace lcy {

// Point b v_i + c v_{i+1} of B, with b, c >= 0.
struct ChartPoint {
    int cone = 0;
    V2 p;
    bool operator==(const ChartPoint& o) const { return cone == o.cone && p == o.p; }
};

struct LineSegment {
    int cone = 0;
    V2 entry, exit; // an infinite end repeats the finite one
    V2 dir;         // in the chart of this cone
    bool inf_begin = false, inf_end = false;
};

// Oriented with 0 on the left: wedge(p, dir) = distance > 0 on every segment.
struct ImmersedLine {
    std::vector<LineSegment> segments;
    Q distance;
    // asymptotic data: cone of the final (initial) segment and its direction,
    // with the ray index when the line runs parallel to a ray, else -1
    int end_cone = 0, begin_cone = 0;
    int end_parallel_ray = -1, begin_parallel_ray = -1;
};

struct TraceOptions {
    int max_segments = 100000;
};

class AffineAtlas {
  public:
    explicit AffineAtlas(const std::vector<i64>& self_ints);

    int n() const { return n_; }
    int mod(int i) const { return ((i % n_) + n_) % n_; }
    // D_i² corrected for the node of a one-component cycle
    i64 dt(int i) const { return dt_[static_cast<std::size_t>(mod(i))]; }
    // cone i -> cone i+1, acting on (b,c)-coordinates
    const M2& transition(int i) const { return trans_[static_cast<std::size_t>(mod(i))]; }
    M2 monodromy() const;
    // ray 0 in cone 0 as (a,0); ray i >= 1 in cone i-1 as (0,a)
    ChartPoint canonical(const ChartPoint& x) const;
    // rewrite a point on the shared ray into the neighbouring cone
    ChartPoint to_next(const ChartPoint& x) const;
    ChartPoint to_prev(const ChartPoint& x) const;
    // vector from cone `from` transported `steps` cones counterclockwise (negative: clockwise)
    V2 transport(const V2& v, int from, int steps) const;
    I2 transport(const I2& v, int from, int steps) const;

    // Images w_0..w_count of the rays v_0, v_1, ... along the universal cover.
    std::vector<I2> developing_rays(I2 w0, I2 w1, int count) const;
    // Image of a point of cone k of the universal cover (k may exceed n).
    V2 develop(int k, const V2& bc, const std::vector<I2>& rays) const;

    // Segments swept from `start` in direction `dir` until the line escapes.
    std::vector<LineSegment> trace_ray(const ChartPoint& start, const V2& dir, TraceOptions opt = {}) const;
    ImmersedLine trace_line(const ChartPoint& start, const V2& dir, TraceOptions opt = {}) const;

  private:
    int n_;
    std::vector<i64> dt_;
    std::vector<M2> trans_;
};

Q line_distance(const ImmersedLine& L);

} // namespace lcy
