#include "moldable/schedule.hpp"

namespace moldable {

std::vector<int> PlacedJob::machine_list() const {
    if (!machines.empty()) return machines;
    std::vector<int> out(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) out[static_cast<std::size_t>(i)] = first_machine + i;
    return out;
}

void Schedule::recompute_makespan() {
    makespan = Rat(0);
    for (const PlacedJob& p : placements) makespan = max(makespan, p.end());
}

}  // namespace moldable
