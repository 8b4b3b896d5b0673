#pragma once

#include "lcy/pair_model.hpp"
#include "lcy/tropical.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lcy {

// Text output of a command; status 0 = ok, 1 = mathematical negative or violation.
struct Report {
    int status = 0;
    std::string text;
    std::string svg;
};

Report positivity_report(const LooijengaPair& p);
// divisor empty: parallel configuration, or the Z(L) 1-gon for a one-component cycle
Report polygon_report(const LooijengaPair& p, const std::vector<i64>& divisor, bool want_svg);
Report theta_report(const LooijengaPair& p, const I2& a, const I2& b, int order);
Report exceptional_period_report(const LooijengaPair& p, int i, int j, const std::vector<i64>& divisor,
                                 bool want_svg = false);
Report cycle_period_report(const LooijengaPair& p, const TropicalCycle& c, bool want_svg = false);
Report dp1_e8_report(bool json);
Report central_fiber_report(const LooijengaPair& p, const std::vector<i64>& divisor, int component);

std::string svg_polygon(const std::vector<i64>& self_ints, const PolygonOnB& F);
// the expanded cycle in the plane of the toric fan, with rays and focus-focus points
std::string svg_cycle(const FocusFocusLayout& L, const TropicalCycle& c);

} // namespace lcy
