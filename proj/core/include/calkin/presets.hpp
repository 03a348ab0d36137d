#pragma once

#include <string>
#include <vector>

#include "calkin/tuple.hpp"

namespace calkin {

/// Named example tuples, so every check runs without hand-written files:
///   right-shift            (R)
///   left-shift             (R*)
///   fsw-rank-one           (R(1 - P0))
///   chavan-counterexample  (R, R*)/sqrt(2)
///   banded-spherical       (T_{(z+z^2)/2}, T_{(z-z^2)/2})
///   rank-one-spherical     ((1/sqrt(2)) R(1 - P0), (1/sqrt(2)) R*)
OperatorTuple make_preset(const std::string& name);

const std::vector<std::string>& preset_names();

}  // namespace calkin
