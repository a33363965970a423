#include "hypercongruence/types.hpp"

#include <cmath>
#include <numbers>

namespace hcong {

Constants make_constants(double eps_eq)
{
    using std::numbers::pi;
    Constants c;
    c.eps_eq = eps_eq;
    c.eps_key = 1e3 * eps_eq;
    const double icosa_edge = std::sqrt(50.0 - 10.0 * std::sqrt(5.0)) / 5.0;
    c.alpha_min = std::asin(icosa_edge / 2.0);
    c.delta_min = std::sqrt(2.0) * std::sin(c.alpha_min);
    const double cap = (8.0 / 15.0) * pi * pi * std::pow(c.delta_min / 2.0, 5);
    c.C1 = static_cast<int>(std::floor(2.0 * pi * pi * pi / cap / 2.0));
    const double ball = (4.0 / 3.0) * pi * std::pow(c.delta0 / 2.0, 3);
    c.n0 = std::floor(2.0 * pi * pi / ball);
    return c;
}

const Constants& default_constants()
{
    static const Constants c = make_constants();
    return c;
}

}  // namespace hcong
