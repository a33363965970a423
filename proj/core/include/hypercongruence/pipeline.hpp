#pragma once

#include "hypercongruence/types.hpp"

#include <optional>
#include <vector>

namespace hcong {

struct PipelineOptions {
    double eps_eq = 1e-9;
    bool allow_reflection = false;
    bool trace = false;
    int max_restarts = 64;
    std::optional<Constants> constants;  // defaults to make_constants(eps_eq)
};

// Decides whether B = R A + t for a rotation R (an orthogonal map when
// reflections are allowed). Throws std::invalid_argument on size mismatch.
Verdict congruence_test_4d(const PointSet4& A, const PointSet4& B, const PipelineOptions& opts = {});
Verdict congruence_test_4d(const std::vector<Vec4>& A, const std::vector<Vec4>& B, const PipelineOptions& opts = {});

}  // namespace hcong
