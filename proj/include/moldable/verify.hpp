#pragma once

#include <optional>
#include <string>
#include <vector>

#include "moldable/driver.hpp"
#include "moldable/schedule.hpp"

namespace moldable {

struct ScheduleViolation {
    enum class Kind { Missing, Duplicate, UnknownJob, Range, Duration, NegativeStart, Overlap, Contiguity, Makespan };
    Kind kind;
    std::vector<JobId> jobs;
    int machine = -1;
    Rat from;  // time window, for overlaps
    Rat to;

    std::string describe() const;
};

const char* to_string(ScheduleViolation::Kind kind);

struct Ratio {
    enum class Baseline { OracleOpt, AcceptedD, LowerBound };
    Baseline baseline;
    Rat baseline_value;
    Rat value;
};

const char* to_string(Ratio::Baseline baseline);

struct VerificationReport {
    bool feasible = true;
    bool contiguous = true;
    Rat makespan;
    std::vector<ScheduleViolation> violations;
    std::optional<Ratio> ratio_vs;

    std::size_t count(ScheduleViolation::Kind kind) const;
};

/// Checks that every job runs exactly once for t(j, width), no machine runs
/// two jobs at once, indices stay in range, and the stored makespan is right.
/// Contiguity breaks are always reflected in `contiguous`; they count as
/// violations only when `require_contiguous` is set.
VerificationReport validate_schedule(const Instance& inst, const Schedule& sched, bool require_contiguous);

/// Exact optimum of the non-contiguous problem by enumerating all allotments
/// and all job orders. Requires n <= 4 and m <= 4.
Rat brute_force_opt(const Instance& inst);

inline bool oracle_caps_allow(const Instance& inst) { return inst.size() <= 4 && inst.m <= 4; }

/// validate_schedule plus makespan / baseline, where the baseline is the
/// exact optimum when the oracle caps allow and the certified lower bound
/// otherwise.
VerificationReport ratio_report(const Instance& inst, const SolveResult& result);

}  // namespace moldable
