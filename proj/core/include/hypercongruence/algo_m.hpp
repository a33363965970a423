#pragma once

#include "hypercongruence/condense.hpp"
#include "hypercongruence/geometry.hpp"

#include <vector>

namespace hcong {

struct MResult {
    enum class Kind { Markers, FewCircles };

    Kind kind = Kind::FewCircles;
    std::vector<Vec4> markers;
    std::vector<PlaneSpan> circles;
    std::size_t pairs = 0;  // marked pairs
};

MResult algorithm_m(const std::vector<PlaneSpan>& circles, LockstepRun& run, const Constants& k);

}  // namespace hcong
