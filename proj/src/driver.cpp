#include "moldable/driver.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "moldable/verify.hpp"

namespace moldable {

std::string Reject::describe() const {
    std::ostringstream os;
    switch (reason) {
        case Reason::Gamma: os << "job " << job << " cannot finish within d on all machines"; break;
        case Reason::Infeasible: os << "no class choice fits 2m half-machines"; break;
        case Reason::WorkBound: os << "knapsack cost " << cost << " exceeds budget " << budget; break;
    }
    return os.str();
}

SearchBounds initial_bounds(const Instance& inst) {
    SearchBounds b;
    Rat max_tm;
    for (const Job& job : inst.jobs) {
        b.upper += job.time(1);
        max_tm = max(max_tm, job.time(inst.m));
    }
    b.lower = max(b.upper / Rat(static_cast<long>(inst.m)), max_tm);
    return b;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

enum class Regime { Zero, Small, Large };

Regime regime_of(const ShelfSchedule& ss) {
    const int q = ss.q();
    if (q == 0) return Regime::Zero;
    if (6 * q <= ss.shelf1_width()) return Regime::Small;
    return Regime::Large;
}

bool fits_directly(const ShelfSchedule& ss) { return ss.m2() <= ss.shelf1_width(); }

}  // namespace

GuessResult try_guess(const Instance& inst, const Rat& d, PhaseTimings* timings) {
    if (d.sign() <= 0) throw ContractViolation("try_guess: d must be positive");
    PhaseTimings local;
    PhaseTimings& t = timings ? *timings : local;

    auto t0 = Clock::now();
    const JobClassification cls = classify_jobs(inst, d);
    auto built = build_items(inst, cls.big, d);
    if (auto* g = std::get_if<GammaReject>(&built)) {
        t.knapsack_ms += ms_since(t0);
        return Reject{Reject::Reason::Gamma, g->job_id, {}, {}};
    }
    const auto& items = std::get<std::vector<MckpItem>>(built);
    auto partition = solve_mckp(items, inst.m);
    const Rat budget = Rat(static_cast<long>(inst.m)) * d - cls.ws;
    t.knapsack_ms += ms_since(t0);
    if (!partition) return Reject{Reject::Reason::Infeasible, 0, {}, budget};
    if (partition->total_cost > budget) return Reject{Reject::Reason::WorkBound, 0, partition->total_cost, budget};

    t0 = Clock::now();
    Accepted acc;
    auto attempt = [&](const Rat& lambda) {
        ShelfSchedule ss = build_three_shelf(inst, items, *partition, d, lambda);
        acc.transforms = apply_transformations(inst, ss);
        acc.lambda = lambda;
        return ss;
    };
    auto small_repair = [&](ShelfSchedule ss) {
        acc.repair = fits_directly(ss) ? "direct" : "small_q";
        return repair_s2_small_q(inst, std::move(ss));
    };
    auto large_repair = [&](ShelfSchedule ss) {
        acc.repair = "large_q";
        return repair_s2_large_q(inst, std::move(ss));
    };

    const Rat& lam_star = constants::lambda_star_upper();
    ShelfSchedule ss = attempt(constants::lambda_q0());
    Schedule bottom;
    if (fits_directly(ss) || regime_of(ss) == Regime::Zero) {
        bottom = small_repair(std::move(ss));
    } else {
        const bool large = regime_of(ss) == Regime::Large;
        ss = attempt(large ? lam_star : constants::lambda_small_q());
        if (fits_directly(ss) || regime_of(ss) != Regime::Large) {
            bottom = small_repair(std::move(ss));
        } else if (large) {
            bottom = large_repair(std::move(ss));
        } else {
            // q grew past (m - m0)/6 after all; rebuild at the largest lambda
            ss = attempt(lam_star);
            if (fits_directly(ss) || regime_of(ss) != Regime::Large)
                bottom = small_repair(std::move(ss));
            else
                bottom = large_repair(std::move(ss));
        }
    }
    t.shelves_ms += ms_since(t0);

    t0 = Clock::now();
    acc.schedule = add_small_jobs(bottom, inst, cls.small, acc.lambda, d);
    left_shift(acc.schedule);
    t.small_jobs_ms += ms_since(t0);

    t0 = Clock::now();
    const VerificationReport rep = validate_schedule(inst, acc.schedule, true);
    t.verify_ms += ms_since(t0);
    if (!rep.feasible) {
        std::ostringstream os;
        for (const ScheduleViolation& v : rep.violations) os << v.describe() << "\n";
        throw InvariantViolation("try_guess produced an infeasible schedule at d = " + d.str(), os.str());
    }
    if (acc.schedule.makespan > acc.lambda * d)
        throw InvariantViolation("try_guess: makespan " + acc.schedule.makespan.str() + " exceeds lambda d");
    acc.partition = std::move(*partition);
    return acc;
}

namespace {

Rat geometric_mid(const Rat& lo, const Rat& hi) {
    const double g = std::sqrt(lo.to_double() * hi.to_double());
    if (std::isfinite(g)) {
        const Rat mid = Rat::from_double(g);
        if (lo < mid && mid < hi) return mid;
    }
    return (lo + hi) / Rat(2);
}

}  // namespace

SolveResult solve(const Instance& inst, const Rat& eps, const SolveOptions& options) {
    if (eps.sign() <= 0 || eps > Rat(1)) throw ContractViolation("solve: epsilon must lie in (0, 1]");
    if (const auto bad = validate_instance(inst); !bad.empty())
        throw ContractViolation("solve: invalid instance: " + bad.front().describe(inst));

    SolveResult res;
    if (inst.jobs.empty()) {
        res.lambda_used = constants::lambda_q0();
        return res;
    }

    const SearchBounds bounds = initial_bounds(inst);
    Rat lo = bounds.lower;
    Rat hi = bounds.upper;

    auto evaluate = [&](const Rat& d) {
        GuessResult r = try_guess(inst, d, &res.timings);
        if (options.on_guess) options.on_guess(d, r);
        if (auto* acc = std::get_if<Accepted>(&r)) {
            res.schedule = std::move(acc->schedule);
            res.accepted_d = d;
            res.lambda_used = acc->lambda;
            res.partition = std::move(acc->partition);
            return true;
        }
        return false;
    };

    if (!evaluate(hi)) throw InvariantViolation("solve: the sequential upper bound " + hi.str() + " was rejected");
    const Rat stretch = Rat(1) + eps;
    while (hi > stretch * lo) {
        const Rat mid = geometric_mid(lo, hi);
        ++res.iterations;
        if (evaluate(mid))
            hi = mid;
        else
            lo = mid;
    }
    res.makespan = res.schedule.makespan;
    res.lower_bound = lo;
    return res;
}

}  // namespace moldable
