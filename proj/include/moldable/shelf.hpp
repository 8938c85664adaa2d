#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moldable/mckp.hpp"
#include "moldable/schedule.hpp"

namespace moldable {

/// A job, or a piece of one, inside a shelf block. Offsets are relative to the
/// block: `col` is the first column, `start` the time above the block anchor.
struct Part {
    std::size_t job = 0;  // index into Instance::jobs
    int col = 0;
    int width = 1;
    Rat start;
    Rat duration;
};

/// A group of jobs that always occupies adjacent machines.
///
/// Single: one job on `width` machines.
/// Stack:  jobs of equal width stacked on top of each other.
/// Split:  a base job on `width` machines with further jobs stacked on single
///         columns, so the column heights differ. Columns taller than d belong
///         to shelf 0, the rest to shelf 1.
struct ShelfJob {
    enum class Kind { Single, Stack, Split };

    Kind kind = Kind::Single;
    int width = 1;
    std::vector<Part> parts;

    static ShelfJob single(const Instance& inst, std::size_t job, int width);

    std::vector<Rat> column_heights() const;
    Rat height() const;
    std::size_t lead_job() const { return parts.front().job; }
    /// Reverses the column order in place.
    void mirror();
};

enum class ShelfId { S0, S1, S2 };

struct ShelfSchedule {
    int m = 0;
    Rat d;
    Rat lambda;
    std::vector<ShelfJob> s0;  // anchored at time 0, heights in (d, lambda d]
    std::vector<ShelfJob> s1;  // anchored at time 0, heights <= d
    std::vector<ShelfJob> s2;  // Single jobs finishing at lambda d
    /// The block straddling S0 and S1, oriented so its first `split_tall`
    /// columns are the shelf-0 ones.
    std::optional<ShelfJob> split;
    int split_tall = 0;

    int m0() const;
    int m1_used() const;
    int m2() const;
    int shelf1_width() const { return m - m0(); }
    int q() const { return m - m0() - m1_used(); }
    std::optional<JobId> split_job(const Instance& inst) const;

    /// Sum of shelf-1 column heights.
    Rat shelf1_work() const;
    /// Total work of all big jobs at their current allotments.
    Rat total_work() const;

    std::string dump(const Instance& inst) const;
};

/// Distributes the classes of an accepted knapsack solution onto shelves.
/// Class 1 on gamma(j, d); class 2 compressed to half its canonical width at
/// height (4/7)d, pairing gamma = 1 and gamma = 3 jobs; class 3 on
/// gamma(j, (lambda - 1) d) in shelf 2.
ShelfSchedule build_three_shelf(const Instance& inst, std::span<const MckpItem> items,
                                const MckpSolution& partition, const Rat& d, const Rat& lambda);

/// Counts of each transformation applied, for diagnostics and tests.
struct TransformStats {
    int t1 = 0, t2 = 0, t3 = 0, t4 = 0;
};

/// Applies the shelf transformations until none fires:
///   T1  short multi-machine shelf-1 job -> gamma(j, lambda d) machines
///   T2  two short single-machine shelf-1 columns stacked on one machine
///   T3  shelf-2 job with t(j, q) <= lambda d moved onto gamma(j, lambda d) idle machines
///   T4  when shelf-1 work is at most (lambda/2) d (m - m0 - q), the one short
///       single job is stacked on the lowest other shelf-1 job it fits on
/// Afterwards at most one short shelf-1 column remains and every shelf-2 job
/// satisfies t(j, q) > lambda d; both are checked.
TransformStats apply_transformations(const Instance& inst, ShelfSchedule& ss);

/// Which end of the machine row shelf 0 occupies.
enum class Side { Left, Right };

/// A shelf-2 job and the width it finally runs on.
struct TopJob {
    std::size_t job = 0;
    int width = 1;
    Rat height;
};

struct Layout {
    Schedule schedule;
    std::vector<Rat> load;  // per machine, busy time
    Rat max_load;
};

/// Assigns machine indices. Side::Left gives
///   [S0 blocks][split: shelf-0 cols | shelf-1 cols][shelf1_order...][idle]
/// and Side::Right its mirror image, so the split block always touches the
/// S0 block. Shelf-1 blocks start at time 0; `tops` are packed left to right
/// and right-aligned on the shelf-1 region, each finishing at lambda d.
Layout layout_contiguous(const Instance& inst, const ShelfSchedule& ss,
                         std::span<const ShelfJob* const> shelf1_order, std::span<const TopJob> tops,
                         Side side);

/// Repair for q <= (m - m0)/6: shrink the lowest shelf-2 job by one machine
/// until shelf 2 fits, then shelf 1 descending left, shelf 2 ascending right.
Schedule repair_s2_small_q(const Instance& inst, ShelfSchedule ss);

/// Repair for q > (m - m0)/6: the single shelf-2 job goes on the widest
/// suffix of least loaded machines where it still finishes by lambda d.
Schedule repair_s2_large_q(const Instance& inst, ShelfSchedule ss);

/// Greedy insertion of width-1 small jobs on the least loaded machine (lowest
/// index on ties), each starting on top of that machine's bottom stack.
Schedule add_small_jobs(const Schedule& sched, const Instance& inst, std::span<const std::size_t> small,
                        const Rat& lambda, const Rat& d);

/// Moves every job as early as possible, processing in order of start time.
/// Never increases any start time; keeps machine assignments.
void left_shift(Schedule& sched);

}  // namespace moldable
