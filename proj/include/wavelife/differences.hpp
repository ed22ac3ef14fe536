#pragma once

#include "wavelife/model.hpp"

namespace wavelife {

// Second-order difference operators on a Field slab (rows 0..valid_up_to):
// centered in the interior, three-point one-sided at the boundary rows/columns.
// Exact on quadratics. The time operator needs at least three valid rows.

Field diff_t(const Field& u);
Field diff_x(const Field& u);
/// Three-point u_xx; boundary columns copy their neighbor.
Field diff_xx(const Field& u);

/// Zeroes every node with |x| > t + R + dx.
void clip_to_cone(Field& u, double R);

}  // namespace wavelife
