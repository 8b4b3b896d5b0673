#pragma once

#include "lcy/pair_model.hpp"
#include "lcy/tropical.hpp"

#include <string>

namespace lcy {

// Malformed document; message carries "line L, column C" when the JSON itself is broken.
struct ParseError : InputError {
    using InputError::InputError;
};

// {"fan_rays": [[x,y],...], "blowups_per_ray": [l,...], "name": s?, "exceptional_labels": [[s,...],...]?}
// or {"self_ints": [d,...], "name": s?} for a pair given without toric model.
LooijengaPair read_pair(const std::string& text);
std::string write_pair(const LooijengaPair& p);
LooijengaPair load_pair(const std::string& path);

// {"name", "vertices": [{"cone", "at": [b, c], "boundary"}], "edges": [{"tail", "head", "vector"}],
//  "loops": [{"ray", "singularity", "orientation", "vertex", "vector"}]}
// Indices are 0-based except singularity; rationals are strings "p/q"; vectors are in the chart of
// the tail's (junction's) cone.
TropicalCycle read_cycle(const FocusFocusLayout& L, const std::string& text);
std::string write_cycle(const FocusFocusLayout& L, const TropicalCycle& c);
TropicalCycle load_cycle(const FocusFocusLayout& L, const std::string& path);

std::string read_file(const std::string& path);

} // namespace lcy
