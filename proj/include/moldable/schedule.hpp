#pragma once

#include <vector>

#include "moldable/model.hpp"

namespace moldable {

/// A job placed on machines [first_machine, first_machine + width) from
/// `start` for `duration`. A non-empty `machines` list overrides the interval
/// (only used to describe non-contiguous placements read from files).
struct PlacedJob {
    JobId job = 0;
    int first_machine = 0;
    int width = 1;
    Rat start;
    Rat duration;
    std::vector<int> machines;

    Rat end() const { return start + duration; }
    std::vector<int> machine_list() const;
};

struct Schedule {
    std::vector<PlacedJob> placements;
    Rat makespan;

    void recompute_makespan();
};

}  // namespace moldable
