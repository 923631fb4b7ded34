#pragma once
// Dyadic partition of unity: a flat W_0 on [-1,1] plus self-similar
// weights W_J supported on [J, 4J/3] (mirrored for J < 0) that telescope
// to exactly 1 on [-range_bound, range_bound].

#include <vector>

#include "gl3osc/weights.hpp"

namespace gl3osc {
namespace osc {

struct PartitionWeight {
    double J = 0.0;  // 0 for the central flat piece
    SmoothWeight w;
};

// O(log range_bound) weights; count_hint, when positive, only extends the
// family beyond range_bound (never truncates the covering set)
std::vector<PartitionWeight> build_partition(double range_bound,
                                             int count_hint = 0);

}  // namespace osc
}  // namespace gl3osc
