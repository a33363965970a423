#pragma once

#include <Eigen/Dense>

namespace hcong::detail {

// Signs of the usual orientation and in-circle determinants, exact for double
// input (floating-point filter, then expansion arithmetic).
int orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c);
int incircle(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c, const Eigen::Vector2d& d);

}  // namespace hcong::detail
