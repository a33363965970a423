#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace hcong {

// Worker count: HYPERCONGRUENCE_THREADS when set and positive, else the
// hardware concurrency.
unsigned thread_count();

// Smallest i in [0, n) with test(i) true, evaluated on up to thread_count()
// threads.
std::optional<std::size_t> parallel_first(std::size_t n, const std::function<bool(std::size_t)>& test);

}  // namespace hcong
