#pragma once

#include <stdexcept>
#include <string>

namespace hcong {

struct DuplicatePointsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IdentityRotationError : std::domain_error {
    using std::domain_error::domain_error;
};

struct CliffordParallelError : std::domain_error {
    using std::domain_error::domain_error;
};

struct DegenerateInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SizeGuardError : std::length_error {
    using std::length_error::length_error;
};

}  // namespace hcong

namespace hcong {

// A condensing stage could not make progress on a configuration it should
// always reduce (only reachable through tolerance effects).
struct StallError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace hcong
