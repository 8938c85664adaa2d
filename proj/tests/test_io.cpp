#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "moldable/driver.hpp"
#include "moldable/gen.hpp"
#include "moldable/io.hpp"

using namespace moldable;

TEST(InstanceFile, RoundTrip) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 50; ++i) {
        GenConfig cfg;
        cfg.n = static_cast<int>(rng() % 8);
        cfg.m = 1 + static_cast<int>(rng() % 6);
        cfg.seed = rng();
        const Instance a = generate(cfg);
        const std::string text = emit_instance(a);
        const Instance b = parse_instance(text);
        EXPECT_EQ(a.m, b.m);
        ASSERT_EQ(a.jobs.size(), b.jobs.size());
        for (std::size_t j = 0; j < a.jobs.size(); ++j) {
            EXPECT_EQ(a.jobs[j].id, b.jobs[j].id);
            EXPECT_EQ(a.jobs[j].times, b.jobs[j].times);
        }
        EXPECT_EQ(emit_instance(b), text);
    }
}

TEST(InstanceFile, DecimalAndIntegerTimes) {
    const Instance inst = parse_instance(R"({"m": 2, "jobs": [{"id": 4, "times": ["1.5", 1]}]})");
    EXPECT_EQ(inst.jobs[0].time(1), Rat(3, 2));
    EXPECT_EQ(inst.jobs[0].time(2), Rat(1));
}

TEST(InstanceFile, SyntaxErrorCarriesPosition) {
    try {
        parse_instance("{\n  \"m\": 2,\n  \"jobs\": [ }\n}");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_GT(e.column(), 1u);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(InstanceFile, StructuralErrors) {
    EXPECT_THROW(parse_instance(R"({"jobs": []})"), ParseError);
    EXPECT_THROW(parse_instance(R"({"m": 1, "jobs": [{"id": 1}]})"), ParseError);
    EXPECT_THROW(parse_instance(R"({"m": 1, "jobs": [{"id": 1, "times": [0.5]}]})"), ParseError);
    EXPECT_THROW(parse_instance(R"({"m": 1, "jobs": [{"id": 1, "times": ["x"]}]})"), ParseError);
    EXPECT_THROW(parse_instance(R"([1, 2])"), ParseError);
}

TEST(ScheduleFile, RoundTrip) {
    GenConfig cfg;
    cfg.n = 12;
    cfg.m = 5;
    cfg.seed = 3;
    const Instance inst = generate(cfg);
    const SolveResult r = solve(inst, Rat(1, 20));
    ScheduleFile f{r.schedule, r.lambda_used, r.accepted_d};
    f.schedule.placements.push_back({99, 0, 2, Rat(1, 3), Rat(2, 7), {0, 3}});
    const std::string text = emit_schedule(f);
    const ScheduleFile g = parse_schedule(text);
    EXPECT_EQ(g.lambda, f.lambda);
    EXPECT_EQ(g.accepted_d, f.accepted_d);
    EXPECT_EQ(g.schedule.makespan, f.schedule.makespan);
    ASSERT_EQ(g.schedule.placements.size(), f.schedule.placements.size());
    for (std::size_t i = 0; i < f.schedule.placements.size(); ++i) {
        const auto& a = f.schedule.placements[i];
        const auto& b = g.schedule.placements[i];
        EXPECT_EQ(a.job, b.job);
        EXPECT_EQ(a.first_machine, b.first_machine);
        EXPECT_EQ(a.width, b.width);
        EXPECT_EQ(a.start, b.start);
        EXPECT_EQ(a.duration, b.duration);
        EXPECT_EQ(a.machines, b.machines);
    }
    EXPECT_EQ(emit_schedule(g), text);
}

TEST(Gantt, OneRectanglePerPlacement) {
    GenConfig cfg;
    cfg.n = 17;
    cfg.m = 6;
    cfg.seed = 8;
    const Instance inst = generate(cfg);
    const SolveResult r = solve(inst, Rat(1, 20));
    const std::string svg = gantt_svg(inst, r.schedule);
    const std::regex rect("<rect ");
    const auto n = std::distance(std::sregex_iterator(svg.begin(), svg.end(), rect), std::sregex_iterator());
    EXPECT_EQ(n, 17);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
}
