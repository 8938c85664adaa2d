#pragma once

#include <array>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "moldable/model.hpp"

namespace moldable {

/// One class option of a knapsack item. Sizes are counted in half-machines so
/// that the class-2 size gamma/2 stays integral.
struct MckpOption {
    int machines = kInfinity;  // canonical machine count behind this option
    Rat cost;                  // meaningful only when available()
    long size2 = 0;

    bool available() const { return machines != kInfinity; }
};

struct MckpItem {
    std::size_t job = 0;  // index into Instance::jobs
    JobId job_id = 0;
    std::array<MckpOption, 3> options;  // classes 1, 2, 3
};

struct MckpSolution {
    std::vector<int> assignment;  // class in {1,2,3}, parallel to the items
    Rat total_cost;
    long total_size2 = 0;
};

/// Some big job cannot finish within d even on all m machines.
struct GammaReject {
    JobId job_id;
};

/// Class options for every big job at guess d: heights d, (4/7)d, (3/7)d.
std::variant<std::vector<MckpItem>, GammaReject> build_items(const Instance& inst,
                                                             std::span<const std::size_t> big,
                                                             const Rat& d);

/// Minimum-cost choice of one option per item with total_size2 <= 2m, by
/// dynamic programming over half-machine capacities. std::nullopt when no
/// choice fits. Ties: smaller total size, then lexicographically smallest
/// class vector in item order.
std::optional<MckpSolution> solve_mckp(std::span<const MckpItem> items, int m);

/// Exhaustive 3^n enumeration with the same contract and tie-break as
/// solve_mckp. Throws ContractViolation for more than 14 items.
std::optional<MckpSolution> brute_mckp(std::span<const MckpItem> items, int m);

}  // namespace moldable
