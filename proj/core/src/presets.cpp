#include "calkin/presets.hpp"

#include <cmath>

#include "calkin/errors.hpp"

namespace calkin {

namespace {

StructuredOperator shift_killing_e0() {
  // R(1 - P0): symbol z with the (1,0) entry cancelled.
  const StructuredOperator p0 = from_block(CompactBlock::unit(0, 0, 1.0));
  return compose(right_shift(), subtract(identity(), p0));
}

}  // namespace

OperatorTuple make_preset(const std::string& name) {
  const double inv_root2 = 1.0 / std::sqrt(2.0);
  if (name == "right-shift") {
    return OperatorTuple{right_shift()};
  }
  if (name == "left-shift") {
    return OperatorTuple{left_shift()};
  }
  if (name == "fsw-rank-one") {
    return OperatorTuple{shift_killing_e0()};
  }
  if (name == "chavan-counterexample") {
    return OperatorTuple{scale(inv_root2, right_shift()),
                         scale(inv_root2, left_shift())};
  }
  if (name == "banded-spherical") {
    return OperatorTuple{
        toeplitz(LaurentPoly({{1, 0.5}, {2, 0.5}})),
        toeplitz(LaurentPoly({{1, 0.5}, {2, -0.5}}))};
  }
  if (name == "rank-one-spherical") {
    return OperatorTuple{scale(inv_root2, shift_killing_e0()),
                         scale(inv_root2, left_shift())};
  }
  throw ParseError("unknown preset: " + name);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "right-shift",       "left-shift",       "fsw-rank-one",
      "chavan-counterexample", "banded-spherical", "rank-one-spherical"};
  return names;
}

}  // namespace calkin
