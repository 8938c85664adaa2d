#include <gtest/gtest.h>

#include <random>

#include "moldable/gen.hpp"
#include "moldable/mckp.hpp"

using namespace moldable;

namespace {

MckpItem item_with(std::initializer_list<std::pair<long, Rat>> opts) {
    MckpItem it;
    std::size_t l = 0;
    for (const auto& [size2, cost] : opts) {
        if (size2 >= 0) {
            it.options[l].machines = 1;
            it.options[l].size2 = size2;
            it.options[l].cost = cost;
        }
        ++l;
    }
    return it;
}

std::vector<std::size_t> all_jobs(const Instance& inst) {
    std::vector<std::size_t> v(inst.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

}  // namespace

TEST(BuildItems, HandEvaluatedJob) {
    Instance inst{3, {Job{1, {Rat(1), Rat(1, 2), Rat(34, 100)}}}};
    auto r = build_items(inst, all_jobs(inst), Rat(1));
    ASSERT_TRUE(std::holds_alternative<std::vector<MckpItem>>(r));
    const auto& it = std::get<std::vector<MckpItem>>(r).front();
    EXPECT_EQ(it.options[0].machines, 1);
    EXPECT_EQ(it.options[0].cost, Rat(1));
    EXPECT_EQ(it.options[0].size2, 2);
    EXPECT_EQ(it.options[1].machines, 2);
    EXPECT_EQ(it.options[1].cost, Rat(1));
    EXPECT_EQ(it.options[1].size2, 2);
    EXPECT_EQ(it.options[2].machines, 3);
    EXPECT_EQ(it.options[2].cost, Rat(102, 100));
    EXPECT_EQ(it.options[2].size2, 0);
}

TEST(BuildItems, RejectsWhenJobCannotMeetD) {
    Instance inst{2, {Job{7, {Rat(4), Rat(3)}}}};
    auto r = build_items(inst, all_jobs(inst), Rat(2));
    ASSERT_TRUE(std::holds_alternative<GammaReject>(r));
    EXPECT_EQ(std::get<GammaReject>(r).job_id, 7);
}

TEST(BuildItems, AdversarialLongJobHasNoClassThree) {
    const Instance inst = adversarial_instance();
    auto r = build_items(inst, std::vector<std::size_t>{0}, Rat(1));
    const auto& it = std::get<std::vector<MckpItem>>(r).front();
    EXPECT_TRUE(it.options[0].available());
    EXPECT_FALSE(it.options[2].available());  // 6.01/13 > 3/7
}

TEST(SolveMckp, ZeroItems) {
    const auto s = solve_mckp({}, 3);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->total_cost, Rat(0));
    EXPECT_EQ(brute_mckp({}, 3)->total_cost, Rat(0));
}

TEST(SolveMckp, InfeasibleWhenOnlyOptionTooLarge) {
    std::vector<MckpItem> items{item_with({{8, Rat(1)}, {-1, 0}, {-1, 0}})};
    EXPECT_FALSE(solve_mckp(items, 3));
    EXPECT_FALSE(brute_mckp(items, 3));
}

TEST(SolveMckp, TieBreakPrefersSmallerSizeThenLowerClass) {
    // equal costs everywhere: the size-0 class wins
    std::vector<MckpItem> items{item_with({{2, Rat(5)}, {1, Rat(5)}, {0, Rat(5)}})};
    EXPECT_EQ(solve_mckp(items, 2)->assignment, std::vector<int>{3});
    // equal cost and size: class 1 wins
    items = {item_with({{2, Rat(5)}, {2, Rat(5)}, {-1, 0}})};
    EXPECT_EQ(solve_mckp(items, 2)->assignment, std::vector<int>{1});
    EXPECT_EQ(brute_mckp(items, 2)->assignment, std::vector<int>{1});
}

TEST(SolveMckp, CapacityForcesExpensiveChoice) {
    std::vector<MckpItem> items{item_with({{4, Rat(1)}, {2, Rat(2)}, {0, Rat(10)}}),
                                item_with({{4, Rat(1)}, {2, Rat(3)}, {0, Rat(10)}})};
    const auto s = solve_mckp(items, 3);  // capacity 6
    ASSERT_TRUE(s);
    EXPECT_EQ(s->total_cost, Rat(3));
    EXPECT_EQ(s->assignment, (std::vector<int>{2, 1}));
    EXPECT_EQ(s->total_size2, 6);
}

TEST(SolveMckp, MatchesBruteForceOnGeneratedItems) {
    std::mt19937_64 rng(99);
    int compared = 0;
    while (compared < 300) {
        GenConfig cfg;
        cfg.n = static_cast<int>(rng() % 13);
        cfg.m = 1 + static_cast<int>(rng() % 10);
        cfg.seed = rng();
        const Instance inst = generate(cfg);
        const Rat d(10 + static_cast<long>(rng() % 190));
        auto built = build_items(inst, all_jobs(inst), d);
        if (std::holds_alternative<GammaReject>(built)) continue;
        const auto& items = std::get<std::vector<MckpItem>>(built);
        const auto a = solve_mckp(items, cfg.m);
        const auto b = brute_mckp(items, cfg.m);
        ASSERT_EQ(a.has_value(), b.has_value());
        if (a) {
            EXPECT_EQ(a->total_cost, b->total_cost);
            EXPECT_EQ(a->total_size2, b->total_size2);
            EXPECT_EQ(a->assignment, b->assignment);
            EXPECT_LE(a->total_size2, 2L * cfg.m);
        }
        ++compared;
    }
}

TEST(SolveMckp, ExactFallbackForHugeCosts) {
    // denominators whose lcm overflows 62 bits force the rational DP
    std::vector<MckpItem> items;
    const long primes[] = {1000003, 1000033, 1000037, 1000039, 1000081};
    for (long p : primes) items.push_back(item_with({{2, Rat(p + 1, p)}, {1, Rat(p + 2, p)}, {0, Rat(p + 5, p)}}));
    const auto a = solve_mckp(items, 2);
    const auto b = brute_mckp(items, 2);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->total_cost, b->total_cost);
    EXPECT_EQ(a->assignment, b->assignment);
}

TEST(SolveMckp, CostMonotoneInD) {
    GenConfig cfg;
    cfg.n = 8;
    cfg.m = 6;
    cfg.seed = 5;
    const Instance inst = generate(cfg);
    std::optional<Rat> prev;
    for (long d = 20; d <= 200; d += 5) {
        auto built = build_items(inst, all_jobs(inst), Rat(d));
        if (std::holds_alternative<GammaReject>(built)) continue;
        const auto s = solve_mckp(std::get<std::vector<MckpItem>>(built), cfg.m);
        if (!s) continue;
        if (prev) EXPECT_LE(s->total_cost, *prev);
        prev = s->total_cost;
    }
}

TEST(BruteMckp, SizeCap) {
    std::vector<MckpItem> items(15, item_with({{0, Rat(1)}, {-1, 0}, {-1, 0}}));
    EXPECT_THROW(brute_mckp(items, 1), ContractViolation);
    EXPECT_THROW(solve_mckp(items, 0), ContractViolation);
}
