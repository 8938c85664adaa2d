#pragma once

#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "moldable/rat.hpp"

namespace moldable {

using JobId = long;

/// Returned by gamma() when a job cannot meet the height even on all m machines.
inline constexpr int kInfinity = std::numeric_limits<int>::max();

/// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The algorithm reached a state its correctness argument excludes. Carries
/// a human-readable dump of the state for diagnostics.
class InvariantViolation : public std::runtime_error {
public:
    InvariantViolation(const std::string& what, std::string dump = {})
        : std::runtime_error(what), dump_(std::move(dump)) {}
    const std::string& dump() const { return dump_; }

private:
    std::string dump_;
};

struct Job {
    JobId id = 0;
    std::vector<Rat> times;  // times[k-1] = t(j, k)

    int max_machines() const { return static_cast<int>(times.size()); }
    const Rat& time(int k) const { return times[static_cast<std::size_t>(k - 1)]; }
};

struct Instance {
    int m = 0;
    std::vector<Job> jobs;

    std::size_t size() const { return jobs.size(); }
};

/// Processing work k * t(j, k). Throws ContractViolation unless 1 <= k <= m.
Rat work(const Job& job, int k);

/// Smallest k with t(j, k) <= h, or kInfinity. Binary search over k; relies
/// on time monotony.
int gamma(const Job& job, const Rat& h);

/// Reference linear scan for gamma(); used as a cross-check.
int gamma_scan(const Job& job, const Rat& h);

struct Violation {
    enum class Kind { Length, NonPositive, TimeMonotony, WorkMonotony, DuplicateId, MachineCount };
    Kind kind;
    std::size_t job_index;
    int k;  // 1-based machine count where the problem was found (0 when not applicable)

    std::string describe(const Instance& inst) const;
};

/// Every (job, k) pair breaking positivity, length, or monotony. Empty means valid.
std::vector<Violation> validate_instance(const Instance& inst);

/// Upper bracket of the root of ln(x) = 3x - 4 near 1.4593 with
/// root < result <= root + tolerance. Requires 0 < tolerance < 1/1000.
Rat lambda_star(const Rat& tolerance);

namespace constants {

inline Rat lambda_q0() { return Rat(10, 7); }
inline Rat lambda_small_q() { return Rat(13, 9); }
/// lambda_star(10^-6), computed once.
const Rat& lambda_star_upper();
inline Rat small_threshold_frac() { return Rat(3, 7); }
inline Rat class2_frac() { return Rat(4, 7); }
inline Rat shelf2_frac(const Rat& lambda) { return lambda - Rat(1); }

}  // namespace constants

struct JobClassification {
    std::vector<std::size_t> small;  // job indices, input order
    std::vector<std::size_t> big;
    Rat ws;  // sum of t(j,1) over small jobs
};

/// Small iff t(j,1) <= (3/7) d.
JobClassification classify_jobs(const Instance& inst, const Rat& d);

}  // namespace moldable
