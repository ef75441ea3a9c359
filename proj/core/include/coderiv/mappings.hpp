#pragma once

#include "coderiv/types.hpp"

namespace coderiv {

// f(x) = ((x1^2 - x2^2)/|x|, 2 x1 x2/|x|), f(0) = 0. Doubles the polar angle
// and keeps the radius.
Point2 eval_f(const Point2& p);

// f applied independently to (x1, x2) and (x3, x4); a zero block maps to zero.
Point4 eval_g(const Point4& p);

// Like g but both blocks share the full-vector norm |x| as denominator.
Point4 eval_h(const Point4& p);

/// Dimension-erased evaluation used by the oracles. p.size() must equal
/// dimension(map).
VecX evaluate(MapId map, const VecX& p);

}  // namespace coderiv
