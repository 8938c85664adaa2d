#include "moldable/model.hpp"

#include <set>
#include <sstream>

#include <mpfr.h>

namespace moldable {

Rat work(const Job& job, int k) {
    if (k < 1 || k > job.max_machines())
        throw ContractViolation("work: machine count " + std::to_string(k) + " outside [1, " +
                                std::to_string(job.max_machines()) + "]");
    return job.time(k) * Rat(static_cast<long>(k));
}

int gamma(const Job& job, const Rat& h) {
    const int m = job.max_machines();
    if (m == 0 || job.time(m) > h) return kInfinity;
    int lo = 1, hi = m;  // t(hi) <= h
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (job.time(mid) <= h)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

int gamma_scan(const Job& job, const Rat& h) {
    for (int k = 1; k <= job.max_machines(); ++k)
        if (job.time(k) <= h) return k;
    return kInfinity;
}

std::string Violation::describe(const Instance& inst) const {
    std::ostringstream os;
    os << "job #" << job_index;
    if (job_index < inst.jobs.size()) os << " (id " << inst.jobs[job_index].id << ")";
    switch (kind) {
        case Kind::Length: os << ": times has " << k << " entries, expected " << inst.m; break;
        case Kind::NonPositive: os << ": t(j," << k << ") is not positive"; break;
        case Kind::TimeMonotony: os << ": time monotony broken at k=" << k; break;
        case Kind::WorkMonotony: os << ": work monotony broken at k=" << k; break;
        case Kind::DuplicateId: os << ": duplicate job id"; break;
        case Kind::MachineCount: os << ": machine count m=" << inst.m << " must be positive"; break;
    }
    return os.str();
}

std::vector<Violation> validate_instance(const Instance& inst) {
    using K = Violation::Kind;
    std::vector<Violation> out;
    if (inst.m < 1) out.push_back({K::MachineCount, 0, 0});
    std::set<JobId> seen;
    for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
        const Job& job = inst.jobs[i];
        if (!seen.insert(job.id).second) out.push_back({K::DuplicateId, i, 0});
        if (job.max_machines() != inst.m) {
            out.push_back({K::Length, i, job.max_machines()});
            continue;
        }
        for (int k = 1; k <= inst.m; ++k) {
            if (job.time(k).sign() <= 0) out.push_back({K::NonPositive, i, k});
            if (k == 1) continue;
            if (job.time(k) > job.time(k - 1)) out.push_back({K::TimeMonotony, i, k});
            // Adjacent checks imply the pairwise conditions by transitivity.
            if (work(job, k) < work(job, k - 1)) out.push_back({K::WorkMonotony, i, k});
        }
    }
    return out;
}

namespace {

class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

// Sign of ln(x) - 3x + 4, evaluated with 256-bit precision.
int root_function_sign(const Rat& x) {
    Mpfr xv(256), lhs(256), rhs(256);
    mpfr_set_q(xv.get(), x.raw().get_mpq_t(), MPFR_RNDN);
    mpfr_log(lhs.get(), xv.get(), MPFR_RNDN);
    mpfr_mul_ui(rhs.get(), xv.get(), 3, MPFR_RNDN);
    mpfr_sub_ui(rhs.get(), rhs.get(), 4, MPFR_RNDN);
    return mpfr_cmp(lhs.get(), rhs.get());
}

}  // namespace

Rat lambda_star(const Rat& tolerance) {
    if (tolerance.sign() <= 0 || tolerance >= Rat(1, 1000))
        throw ContractViolation("lambda_star: tolerance must lie in (0, 1/1000)");
    Rat lo(14, 10), hi(15, 10);  // f(lo) > 0 > f(hi)
    while (hi - lo > tolerance) {
        Rat mid = (lo + hi) / Rat(2);
        if (root_function_sign(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

namespace constants {

const Rat& lambda_star_upper() {
    static const Rat value = lambda_star(Rat(1, 1000000));
    return value;
}

}  // namespace constants

JobClassification classify_jobs(const Instance& inst, const Rat& d) {
    if (d.sign() <= 0) throw ContractViolation("classify_jobs: d must be positive");
    const Rat threshold = constants::small_threshold_frac() * d;
    JobClassification out;
    for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
        const Rat& t1 = inst.jobs[i].time(1);
        if (t1 <= threshold) {
            out.small.push_back(i);
            out.ws += t1;
        } else {
            out.big.push_back(i);
        }
    }
    return out;
}

}  // namespace moldable
