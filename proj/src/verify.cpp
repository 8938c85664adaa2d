#include "moldable/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace moldable {

const char* to_string(ScheduleViolation::Kind kind) {
    using K = ScheduleViolation::Kind;
    switch (kind) {
        case K::Missing: return "missing";
        case K::Duplicate: return "duplicate";
        case K::UnknownJob: return "unknown_job";
        case K::Range: return "range";
        case K::Duration: return "duration";
        case K::NegativeStart: return "negative_start";
        case K::Overlap: return "overlap";
        case K::Contiguity: return "contiguity";
        case K::Makespan: return "makespan";
    }
    return "?";
}

const char* to_string(Ratio::Baseline baseline) {
    switch (baseline) {
        case Ratio::Baseline::OracleOpt: return "oracle_opt";
        case Ratio::Baseline::AcceptedD: return "accepted_d";
        case Ratio::Baseline::LowerBound: return "lower_bound";
    }
    return "?";
}

std::string ScheduleViolation::describe() const {
    std::ostringstream os;
    os << to_string(kind) << ":";
    for (JobId j : jobs) os << " job " << j;
    if (machine >= 0) os << " machine " << machine;
    if (kind == Kind::Overlap) os << " window [" << from << ", " << to << ")";
    return os.str();
}

std::size_t VerificationReport::count(ScheduleViolation::Kind kind) const {
    return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                  [kind](const ScheduleViolation& v) { return v.kind == kind; }));
}

VerificationReport validate_schedule(const Instance& inst, const Schedule& sched, bool require_contiguous) {
    using K = ScheduleViolation::Kind;
    VerificationReport rep;
    const int m = inst.m;

    std::map<JobId, std::size_t> index_of;
    for (std::size_t i = 0; i < inst.jobs.size(); ++i) index_of.emplace(inst.jobs[i].id, i);
    std::vector<int> placed(inst.jobs.size(), 0);

    struct Interval {
        Rat start, end;
        JobId job;
    };
    std::vector<std::vector<Interval>> busy(static_cast<std::size_t>(std::max(m, 0)));

    for (const PlacedJob& p : sched.placements) {
        rep.makespan = max(rep.makespan, p.end());
        const auto it = index_of.find(p.job);
        if (it == index_of.end()) {
            rep.violations.push_back({K::UnknownJob, {p.job}});
            continue;
        }
        if (++placed[it->second] == 2) rep.violations.push_back({K::Duplicate, {p.job}});
        if (p.start.sign() < 0) rep.violations.push_back({K::NegativeStart, {p.job}});

        std::vector<int> cols = p.machine_list();
        std::sort(cols.begin(), cols.end());
        const bool width_ok = p.width >= 1 && p.width <= m && static_cast<int>(cols.size()) == p.width;
        const bool cols_ok = std::adjacent_find(cols.begin(), cols.end()) == cols.end() &&
                             std::all_of(cols.begin(), cols.end(), [m](int c) { return c >= 0 && c < m; });
        if (!width_ok || !cols_ok) {
            rep.violations.push_back({K::Range, {p.job}});
            continue;
        }
        if (p.duration != inst.jobs[it->second].time(p.width)) rep.violations.push_back({K::Duration, {p.job}});
        if (cols.back() - cols.front() + 1 != p.width) {
            rep.contiguous = false;
            if (require_contiguous) rep.violations.push_back({K::Contiguity, {p.job}, cols.front()});
        }
        for (int c : cols) busy[static_cast<std::size_t>(c)].push_back({p.start, p.end(), p.job});
    }

    for (std::size_t i = 0; i < inst.jobs.size(); ++i)
        if (placed[i] == 0) rep.violations.push_back({K::Missing, {inst.jobs[i].id}});

    // Sweep each machine in start order; touching intervals are fine.
    for (int c = 0; c < m; ++c) {
        auto& iv = busy[static_cast<std::size_t>(c)];
        std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.start < b.start; });
        std::size_t prev = 0;  // earlier interval reaching furthest right
        for (std::size_t k = 1; k < iv.size(); ++k) {
            if (iv[k].start < iv[prev].end)
                rep.violations.push_back({K::Overlap, {iv[prev].job, iv[k].job}, c, iv[k].start,
                                          min(iv[prev].end, iv[k].end)});
            if (iv[k].end > iv[prev].end) prev = k;
        }
    }

    if (sched.makespan != rep.makespan) rep.violations.push_back({K::Makespan, {}});
    rep.feasible = rep.violations.empty();
    return rep;
}

namespace {

struct OracleSearch {
    const Instance& inst;
    std::vector<int> allot;
    std::vector<std::size_t> order;
    Rat best;
    bool have_best = false;

    void run_orders() {
        std::iota(order.begin(), order.end(), std::size_t{0});
        do {
            std::vector<Rat> free_at(static_cast<std::size_t>(inst.m));
            Rat span;
            for (std::size_t j : order) {
                const int a = allot[j];
                // the a earliest-free machines; the job starts when the last of them frees up
                std::vector<std::size_t> idx(free_at.size());
                std::iota(idx.begin(), idx.end(), std::size_t{0});
                std::stable_sort(idx.begin(), idx.end(),
                                 [&](std::size_t x, std::size_t y) { return free_at[x] < free_at[y]; });
                const Rat start = free_at[idx[static_cast<std::size_t>(a - 1)]];
                const Rat end = start + inst.jobs[j].time(a);
                for (int r = 0; r < a; ++r) free_at[idx[static_cast<std::size_t>(r)]] = end;
                span = max(span, end);
                if (have_best && span >= best) break;
            }
            if (!have_best || span < best) {
                best = span;
                have_best = true;
            }
        } while (std::next_permutation(order.begin(), order.end()));
    }

    void enumerate(std::size_t j) {
        if (j == allot.size()) {
            run_orders();
            return;
        }
        for (int a = 1; a <= inst.m; ++a) {
            allot[j] = a;
            enumerate(j + 1);
        }
    }
};

}  // namespace

Rat brute_force_opt(const Instance& inst) {
    if (!oracle_caps_allow(inst)) throw ContractViolation("brute_force_opt: requires n <= 4 and m <= 4");
    if (inst.jobs.empty()) return Rat(0);
    OracleSearch s{inst, std::vector<int>(inst.size(), 1), std::vector<std::size_t>(inst.size()), Rat(0)};
    s.enumerate(0);
    return s.best;
}

VerificationReport ratio_report(const Instance& inst, const SolveResult& result) {
    VerificationReport rep = validate_schedule(inst, result.schedule, true);
    Ratio r;
    if (oracle_caps_allow(inst)) {
        r.baseline = Ratio::Baseline::OracleOpt;
        r.baseline_value = brute_force_opt(inst);
    } else {
        r.baseline = Ratio::Baseline::LowerBound;
        r.baseline_value = result.lower_bound;
    }
    if (r.baseline_value.sign() > 0) {
        r.value = rep.makespan / r.baseline_value;
        rep.ratio_vs = r;
    }
    return rep;
}

}  // namespace moldable
