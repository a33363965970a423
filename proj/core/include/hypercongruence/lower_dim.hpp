#pragma once

#include "hypercongruence/types.hpp"

#include <optional>
#include <vector>

namespace hcong {

// Rotation S (det +1) with S * A = B as labeled sets, both taken about their
// centroids.
std::optional<Mat3> congruence_3d_labeled(const Cloud3& A, const Cloud3& B, double eps);

// Projects A and B along a0 (least point of A0) and each b in B0, and lifts
// any labeled 3D congruence to R4. A, B centered.
Verdict one_plus_three_reduce(const Cloud4& A, const Cloud4& B, const std::vector<Vec4>& A0, const std::vector<Vec4>& B0,
                              double eps);

}  // namespace hcong
