#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "moldable/driver.hpp"
#include "moldable/gen.hpp"
#include "moldable/verify.hpp"

using namespace moldable;

namespace {

Job flat(JobId id, Rat w, int m) {
    Job j{id, {}};
    for (long k = 1; k <= m; ++k) j.times.push_back(w / Rat(k));
    return j;
}

Instance random_instance(std::mt19937_64& rng, int max_n, int max_m) {
    GenConfig cfg;
    cfg.n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_n));
    cfg.m = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_m));
    cfg.seed = rng();
    return generate(cfg);
}

bool accepted(const GuessResult& r) { return std::holds_alternative<Accepted>(r); }

}  // namespace

TEST(InitialBounds, Examples) {
    Instance one{1, {Job{1, {Rat(5)}}}};
    auto b = initial_bounds(one);
    EXPECT_EQ(b.lower, Rat(5));
    EXPECT_EQ(b.upper, Rat(5));

    Instance two{2, {Job{1, {Rat(4), Rat(2)}}, Job{2, {Rat(4), Rat(2)}}}};
    b = initial_bounds(two);
    EXPECT_EQ(b.lower, Rat(4));
    EXPECT_EQ(b.upper, Rat(8));

    b = initial_bounds(adversarial_instance());
    EXPECT_EQ(b.lower, Rat(1));  // total work 13 on 13 machines
}

TEST(TryGuess, UpperBoundAlwaysAccepted) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        const Instance inst = random_instance(rng, 20, 20);
        EXPECT_TRUE(accepted(try_guess(inst, initial_bounds(inst).upper)));
    }
}

TEST(TryGuess, BelowLowerBoundRejected) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        const Instance inst = random_instance(rng, 20, 20);
        const Rat d = initial_bounds(inst).lower * Rat(99, 100);
        const auto r = try_guess(inst, d);
        ASSERT_FALSE(accepted(r));
        EXPECT_FALSE(std::get<Reject>(r).describe().empty());
    }
    EXPECT_THROW(try_guess(Instance{1, {Job{1, {Rat(1)}}}}, Rat(0)), ContractViolation);
}

TEST(TryGuess, NeverRejectsAtOrAboveTinyOptimum) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 60; ++i) {
        const Instance inst = random_instance(rng, 4, 4);
        const Rat opt = brute_force_opt(inst);
        for (const Rat& f : {Rat(1), Rat(101, 100), Rat(3, 2), Rat(2)})
            EXPECT_TRUE(accepted(try_guess(inst, opt * f))) << "instance " << i;
    }
}

TEST(TryGuess, AcceptedScheduleWithinLambdaD) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        const Instance inst = random_instance(rng, 40, 40);
        const auto b = initial_bounds(inst);
        const Rat d = b.lower + (b.upper - b.lower) * Rat(static_cast<long>(rng() % 100), 1000);
        const auto r = try_guess(inst, d);
        if (const auto* a = std::get_if<Accepted>(&r)) {
            EXPECT_TRUE(validate_schedule(inst, a->schedule, true).feasible);
            EXPECT_LE(a->schedule.makespan, a->lambda * d);
            EXPECT_FALSE(a->repair.empty());
        }
    }
}

TEST(Solve, SingleJob) {
    Instance inst{1, {Job{1, {Rat(5)}}}};
    const auto r = solve(inst, Rat(1, 20));
    EXPECT_EQ(r.makespan, Rat(5));
    EXPECT_LE(r.accepted_d, Rat(5) * Rat(21, 20));
}

TEST(Solve, EmptyInstance) {
    const auto r = solve(Instance{3, {}}, Rat(1, 20));
    EXPECT_EQ(r.makespan, Rat(0));
    EXPECT_TRUE(r.schedule.placements.empty());
}

TEST(Solve, Contracts) {
    Instance inst{1, {Job{1, {Rat(5)}}}};
    EXPECT_THROW(solve(inst, Rat(0)), ContractViolation);
    EXPECT_THROW(solve(inst, Rat(3, 2)), ContractViolation);
    Instance bad{2, {Job{1, {Rat(5), Rat(6)}}}};
    EXPECT_THROW(solve(bad, Rat(1, 20)), ContractViolation);
}

TEST(Solve, PerfectlyMalleableJobs) {
    // t(j,k) = c/k: OPT = n c / m exactly when n c / m >= c / m, any packing of equal work
    for (int n : {1, 3, 7, 12})
        for (int m : {1, 2, 5, 8}) {
            Instance inst{m, {}};
            for (int j = 0; j < n; ++j) inst.jobs.push_back(flat(j + 1, Rat(6), m));
            const Rat opt = Rat(6L * n, m);
            const auto r = solve(inst, Rat(1, 20));
            EXPECT_LE(r.makespan, Rat(14594, 10000) * Rat(21, 20) * opt) << n << "x" << m;
            EXPECT_TRUE(validate_schedule(inst, r.schedule, true).feasible);
        }
}

TEST(Solve, AdversarialInstanceWithinGuarantee) {
    const Instance inst = adversarial_instance();
    const auto r = solve(inst, Rat(1, 20));
    EXPECT_GE(r.makespan, Rat(1));
    EXPECT_LE(r.makespan, Rat(14594, 10000) * Rat(21, 20));
    EXPECT_LE(r.makespan, r.lambda_used * r.accepted_d);
    EXPECT_TRUE(validate_schedule(inst, r.schedule, true).feasible);
}

TEST(Solve, IterationBoundAndLowerBound) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const Instance inst = random_instance(rng, 30, 30);
        const auto b = initial_bounds(inst);
        const Rat eps(1, 20);
        int guesses = 0;
        Rat highest_reject = b.lower;
        SolveOptions opt;
        opt.on_guess = [&](const Rat& d, const GuessResult& r) {
            ++guesses;
            if (!accepted(r)) highest_reject = max(highest_reject, d);
        };
        const auto r = solve(inst, eps, opt);
        EXPECT_EQ(guesses, r.iterations + 1);
        const double ratio = b.upper.to_double() / b.lower.to_double();
        const int bound = ratio <= 1.05 ? 0
                                        : static_cast<int>(std::ceil(std::log2(std::log(ratio) / std::log(1.05)))) + 1;
        EXPECT_LE(r.iterations, bound);
        EXPECT_EQ(r.lower_bound, highest_reject);
        EXPECT_LE(r.accepted_d, (Rat(1) + eps) * r.lower_bound);
        EXPECT_LE(r.makespan, r.lambda_used * r.accepted_d);
    }
}

// Acceptance is expected, not proven, to be monotone in d; this records any exception.
TEST(TryGuess, AcceptanceMonotoneOnGrid) {
    std::mt19937_64 rng(6);
    int inversions = 0;
    for (int i = 0; i < 60; ++i) {
        const Instance inst = random_instance(rng, 25, 25);
        const auto b = initial_bounds(inst);
        bool seen = false;
        for (int k = 0; k <= 40; ++k) {
            const Rat d = b.lower + (b.upper - b.lower) * Rat(k * k, 1600);
            const bool a = accepted(try_guess(inst, d));
            if (seen && !a) ++inversions;
            seen = seen || a;
        }
    }
    RecordProperty("inversions", inversions);
    EXPECT_EQ(inversions, 0);
}
