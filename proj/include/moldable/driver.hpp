#pragma once

#include <functional>
#include <string>
#include <variant>

#include "moldable/mckp.hpp"
#include "moldable/schedule.hpp"
#include "moldable/shelf.hpp"

namespace moldable {

struct SearchBounds {
    Rat lower;
    Rat upper;
};

/// lower = max(sum t(j,1) / m, max t(j,m)), upper = sum t(j,1).
SearchBounds initial_bounds(const Instance& inst);

/// A guess d certified to be below the optimum.
struct Reject {
    enum class Reason { Gamma, Infeasible, WorkBound };
    Reason reason;
    JobId job = 0;  // offending job for Reason::Gamma
    Rat cost;       // knapsack cost for Reason::WorkBound
    Rat budget;     // m d - W_S

    std::string describe() const;
};

struct Accepted {
    Schedule schedule;
    Rat lambda;
    MckpSolution partition;
    TransformStats transforms;
    std::string repair;  // "direct", "small_q" or "large_q"
};

using GuessResult = std::variant<Accepted, Reject>;

struct PhaseTimings {
    double knapsack_ms = 0;
    double shelves_ms = 0;
    double small_jobs_ms = 0;
    double verify_ms = 0;
};

/// One step of the dual approximation: a schedule with makespan at most
/// lambda d, or a certificate that d is below the optimum. Every schedule is
/// checked with validate_schedule before it is returned.
GuessResult try_guess(const Instance& inst, const Rat& d, PhaseTimings* timings = nullptr);

struct SolveOptions {
    /// Called after every evaluated guess, including the initial upper bound.
    std::function<void(const Rat& d, const GuessResult&)> on_guess;
};

struct SolveResult {
    Schedule schedule;
    Rat accepted_d;
    Rat lambda_used;
    Rat makespan;
    int iterations = 0;
    Rat lower_bound;  // max of the initial lower bound and every rejected d
    MckpSolution partition;
    PhaseTimings timings;
};

/// Geometric bisection on d until upper <= (1 + eps) lower. Requires a valid
/// instance and 0 < eps <= 1.
SolveResult solve(const Instance& inst, const Rat& eps, const SolveOptions& options = {});

}  // namespace moldable
