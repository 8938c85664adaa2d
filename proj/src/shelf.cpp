#include "moldable/shelf.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace moldable {

ShelfJob ShelfJob::single(const Instance& inst, std::size_t job, int width) {
    ShelfJob b;
    b.kind = Kind::Single;
    b.width = width;
    b.parts.push_back({job, 0, width, Rat(0), inst.jobs[job].time(width)});
    return b;
}

std::vector<Rat> ShelfJob::column_heights() const {
    std::vector<Rat> h(static_cast<std::size_t>(width));
    for (const Part& p : parts) {
        const Rat top = p.start + p.duration;
        for (int c = p.col; c < p.col + p.width; ++c)
            h[static_cast<std::size_t>(c)] = max(h[static_cast<std::size_t>(c)], top);
    }
    return h;
}

Rat ShelfJob::height() const {
    Rat best;
    for (const Rat& h : column_heights()) best = max(best, h);
    return best;
}

void ShelfJob::mirror() {
    for (Part& p : parts) p.col = width - p.col - p.width;
}

int ShelfSchedule::m0() const {
    int w = split ? split_tall : 0;
    for (const ShelfJob& b : s0) w += b.width;
    return w;
}

int ShelfSchedule::m1_used() const {
    int w = split ? split->width - split_tall : 0;
    for (const ShelfJob& b : s1) w += b.width;
    return w;
}

int ShelfSchedule::m2() const {
    int w = 0;
    for (const ShelfJob& b : s2) w += b.width;
    return w;
}

std::optional<JobId> ShelfSchedule::split_job(const Instance& inst) const {
    if (!split) return std::nullopt;
    return inst.jobs[split->lead_job()].id;
}

Rat ShelfSchedule::shelf1_work() const {
    Rat w;
    for (const ShelfJob& b : s1)
        for (const Rat& h : b.column_heights()) w += h;
    if (split) {
        const auto h = split->column_heights();
        for (std::size_t c = static_cast<std::size_t>(split_tall); c < h.size(); ++c) w += h[c];
    }
    return w;
}

Rat ShelfSchedule::total_work() const {
    Rat w;
    auto add = [&w](const ShelfJob& b) {
        for (const Part& p : b.parts) w += p.duration * Rat(static_cast<long>(p.width));
    };
    for (const ShelfJob& b : s0) add(b);
    for (const ShelfJob& b : s1) add(b);
    for (const ShelfJob& b : s2) add(b);
    if (split) add(*split);
    return w;
}

std::string ShelfSchedule::dump(const Instance& inst) const {
    std::ostringstream os;
    os << "ShelfSchedule m=" << m << " d=" << d << " lambda=" << lambda << " m0=" << m0()
       << " m1_used=" << m1_used() << " m2=" << m2() << " q=" << q() << "\n";
    auto block = [&](const char* shelf, const ShelfJob& b) {
        static constexpr const char* kinds[] = {"single", "stack", "split"};
        os << "  " << shelf << " " << kinds[static_cast<int>(b.kind)] << " width=" << b.width
           << " height=" << b.height() << " parts:";
        for (const Part& p : b.parts)
            os << " [job " << inst.jobs[p.job].id << " col " << p.col << " w " << p.width << " @" << p.start << " +"
               << p.duration << "]";
        os << "\n";
    };
    for (const ShelfJob& b : s0) block("S0", b);
    if (split) {
        os << "  split_tall=" << split_tall << "\n";
        block("S0/S1", *split);
    }
    for (const ShelfJob& b : s1) block("S1", b);
    for (const ShelfJob& b : s2) block("S2", b);
    return os.str();
}

namespace {

// Files a block under S0, S1, or the split slot depending on which of its
// columns exceed d.
void place_block(const Instance& inst, ShelfSchedule& ss, ShelfJob block) {
    const auto h = block.column_heights();
    std::vector<bool> tall(h.size());
    int n_tall = 0;
    for (std::size_t c = 0; c < h.size(); ++c) {
        tall[c] = h[c] > ss.d;
        n_tall += tall[c] ? 1 : 0;
    }
    if (n_tall == block.width) {
        ss.s0.push_back(std::move(block));
        return;
    }
    if (n_tall == 0) {
        ss.s1.push_back(std::move(block));
        return;
    }
    if (ss.split) throw InvariantViolation("second block straddling shelves 0 and 1", ss.dump(inst));
    auto is_prefix = [&](const std::vector<bool>& t) {
        for (int c = 0; c < block.width; ++c)
            if (t[static_cast<std::size_t>(c)] != (c < n_tall)) return false;
        return true;
    };
    if (!is_prefix(tall)) {
        std::reverse(tall.begin(), tall.end());
        if (!is_prefix(tall)) throw InvariantViolation("split block with interleaved tall columns", ss.dump(inst));
        block.mirror();
    }
    block.kind = ShelfJob::Kind::Split;
    ss.split = std::move(block);
    ss.split_tall = n_tall;
}

ShelfJob stack_of(const Instance& inst, std::size_t bottom, std::size_t top, int width) {
    ShelfJob b;
    b.kind = ShelfJob::Kind::Stack;
    b.width = width;
    const Rat& hb = inst.jobs[bottom].time(width);
    b.parts.push_back({bottom, 0, width, Rat(0), hb});
    b.parts.push_back({top, 0, width, hb, inst.jobs[top].time(width)});
    return b;
}

bool lambda_in_range(const Rat& lambda) { return lambda >= constants::lambda_q0() && lambda < Rat(3, 2); }

}  // namespace

ShelfSchedule build_three_shelf(const Instance& inst, std::span<const MckpItem> items,
                                const MckpSolution& partition, const Rat& d, const Rat& lambda) {
    if (!lambda_in_range(lambda)) throw ContractViolation("build_three_shelf: lambda outside [10/7, 3/2)");
    if (partition.assignment.size() != items.size())
        throw ContractViolation("build_three_shelf: partition does not match items");

    ShelfSchedule ss;
    ss.m = inst.m;
    ss.d = d;
    ss.lambda = lambda;

    const Rat shelf2_height = constants::shelf2_frac(lambda) * d;
    std::vector<std::size_t> gamma1, gamma3;

    for (std::size_t i = 0; i < items.size(); ++i) {
        const MckpItem& item = items[i];
        const std::size_t j = item.job;
        switch (partition.assignment[i]) {
            case 1:
                place_block(inst, ss, ShelfJob::single(inst, j, item.options[0].machines));
                break;
            case 2: {
                const int g = item.options[1].machines;
                if (g >= 4)
                    place_block(inst, ss, ShelfJob::single(inst, j, g / 2));
                else if (g == 2)
                    place_block(inst, ss, ShelfJob::single(inst, j, 1));
                else if (g == 3)
                    gamma3.push_back(j);
                else
                    gamma1.push_back(j);
                break;
            }
            case 3: {
                const int k = gamma(inst.jobs[j], shelf2_height);
                if (k == kInfinity) throw InvariantViolation("class-3 job does not fit shelf 2");
                ss.s2.push_back(ShelfJob::single(inst, j, k));
                break;
            }
            default:
                throw ContractViolation("build_three_shelf: class must be 1, 2 or 3");
        }
    }

    // Pair equal-width class-2 jobs by descending height; the odd one out is left over.
    auto pair_up = [&](std::vector<std::size_t>& jobs, int width) -> std::optional<std::size_t> {
        std::sort(jobs.begin(), jobs.end(), [&](std::size_t a, std::size_t b) {
            const Rat& ha = inst.jobs[a].time(width);
            const Rat& hb = inst.jobs[b].time(width);
            if (ha != hb) return ha > hb;
            return inst.jobs[a].id < inst.jobs[b].id;
        });
        std::size_t k = 0;
        for (; k + 1 < jobs.size(); k += 2) place_block(inst, ss, stack_of(inst, jobs[k], jobs[k + 1], width));
        if (k < jobs.size()) return jobs[k];
        return std::nullopt;
    };
    const auto j3 = pair_up(gamma3, 3);
    const auto j1 = pair_up(gamma1, 1);

    if (j3 && j1) {
        // j3 on two machines with j1 on top of one of them.
        ShelfJob b;
        b.kind = ShelfJob::Kind::Split;
        b.width = 2;
        const Rat& h3 = inst.jobs[*j3].time(2);
        b.parts.push_back({*j3, 0, 2, Rat(0), h3});
        b.parts.push_back({*j1, 0, 1, h3, inst.jobs[*j1].time(1)});
        place_block(inst, ss, std::move(b));
    } else if (j3) {
        const int k = gamma(inst.jobs[*j3], lambda * d);
        if (k > 2) throw InvariantViolation("leftover gamma=3 job needs more than 2 machines", ss.dump(inst));
        place_block(inst, ss, ShelfJob::single(inst, *j3, k));
    } else if (j1) {
        place_block(inst, ss, ShelfJob::single(inst, *j1, 1));
    }

    if (ss.m0() + ss.m1_used() > ss.m)
        throw InvariantViolation("shelves 0 and 1 need more than m machines", ss.dump(inst));
    return ss;
}

namespace {

bool less_by_height_then_id(const Instance& inst, const Rat& ha, std::size_t ja, const Rat& hb, std::size_t jb) {
    if (ha != hb) return ha < hb;
    return inst.jobs[ja].id < inst.jobs[jb].id;
}

void check_transformation_properties(const Instance& inst, const ShelfSchedule& ss) {
    const Rat half = ss.lambda * ss.d / Rat(2);
    int short_columns = 0;
    for (const ShelfJob& b : ss.s1)
        for (const Rat& h : b.column_heights())
            if (h < half) ++short_columns;
    if (ss.split) {
        const auto h = ss.split->column_heights();
        for (std::size_t c = static_cast<std::size_t>(ss.split_tall); c < h.size(); ++c)
            if (h[c] < half) ++short_columns;
    }
    if (short_columns > 1)
        throw InvariantViolation("more than one shelf-1 machine runs a job shorter than lambda d / 2",
                                 ss.dump(inst));

    const int q = ss.q();
    if (q >= 1) {
        const Rat lam_d = ss.lambda * ss.d;
        for (const ShelfJob& b : ss.s2) {
            const Job& job = inst.jobs[b.lead_job()];
            if (q <= inst.m && job.time(q) <= lam_d)
                throw InvariantViolation("shelf-2 job with work at most lambda d q remains", ss.dump(inst));
        }
    }
}

}  // namespace

TransformStats apply_transformations(const Instance& inst, ShelfSchedule& ss) {
    TransformStats stats;
    const Rat lam_d = ss.lambda * ss.d;
    const Rat half = lam_d / Rat(2);

    while (true) {
        // T1
        bool fired = false;
        for (std::size_t i = 0; i < ss.s1.size(); ++i) {
            const ShelfJob& b = ss.s1[i];
            if (b.kind != ShelfJob::Kind::Single || b.width <= 1 || b.height() > half) continue;
            const std::size_t j = b.lead_job();
            const int k = gamma(inst.jobs[j], lam_d);
            if (k >= b.width) throw InvariantViolation("T1 would not reduce the allotment", ss.dump(inst));
            ss.s1.erase(ss.s1.begin() + static_cast<std::ptrdiff_t>(i));
            place_block(inst, ss, ShelfJob::single(inst, j, k));
            ++stats.t1;
            fired = true;
            break;
        }
        if (fired) continue;

        // T2
        std::vector<std::size_t> short_singles;  // indices into s1
        for (std::size_t i = 0; i < ss.s1.size(); ++i) {
            const ShelfJob& b = ss.s1[i];
            if (b.kind == ShelfJob::Kind::Single && b.width == 1 && b.height() < half) short_singles.push_back(i);
        }
        bool split_column_short = false;
        if (ss.split && ss.split->width - ss.split_tall == 1)
            split_column_short = ss.split->column_heights().back() < half;

        if (!short_singles.empty() && split_column_short) {
            ShelfJob b = std::move(*ss.split);
            ss.split.reset();
            ss.split_tall = 0;
            const std::size_t j = ss.s1[short_singles.front()].lead_job();
            ss.s1.erase(ss.s1.begin() + static_cast<std::ptrdiff_t>(short_singles.front()));
            const int col = b.width - 1;
            b.parts.push_back({j, col, 1, b.column_heights()[static_cast<std::size_t>(col)], inst.jobs[j].time(1)});
            place_block(inst, ss, std::move(b));
            ++stats.t2;
            continue;
        }
        if (short_singles.size() >= 2) {
            const std::size_t a = ss.s1[short_singles[0]].lead_job();
            const std::size_t c = ss.s1[short_singles[1]].lead_job();
            ss.s1.erase(ss.s1.begin() + static_cast<std::ptrdiff_t>(short_singles[1]));
            ss.s1.erase(ss.s1.begin() + static_cast<std::ptrdiff_t>(short_singles[0]));
            place_block(inst, ss, stack_of(inst, a, c, 1));
            ++stats.t2;
            continue;
        }

        // T3
        const int q = ss.q();
        if (q >= 1) {
            for (std::size_t i = 0; i < ss.s2.size(); ++i) {
                const std::size_t j = ss.s2[i].lead_job();
                const Job& job = inst.jobs[j];
                if (job.time(q) > lam_d) continue;
                const int k = gamma(job, lam_d);
                ss.s2.erase(ss.s2.begin() + static_cast<std::ptrdiff_t>(i));
                place_block(inst, ss, ShelfJob::single(inst, j, k));
                ++stats.t3;
                fired = true;
                break;
            }
            if (fired) continue;
        }

        // T4
        if (!ss.split && short_singles.size() == 1 &&
            ss.shelf1_work() <= half * Rat(static_cast<long>(ss.m1_used()))) {
            const std::size_t si = short_singles.front();
            const std::size_t j = ss.s1[si].lead_job();
            const Rat t = ss.s1[si].height();
            std::optional<std::size_t> host;
            Rat host_height;
            for (std::size_t i = 0; i < ss.s1.size(); ++i) {
                if (i == si || ss.s1[i].kind == ShelfJob::Kind::Split) continue;
                const Rat h = ss.s1[i].height();
                if (h + t > lam_d) continue;
                if (!host || less_by_height_then_id(inst, h, ss.s1[i].lead_job(), host_height, ss.s1[*host].lead_job())) {
                    host = i;
                    host_height = h;
                }
            }
            if (host) {
                ShelfJob b = std::move(ss.s1[*host]);
                b.kind = b.width == 1 ? ShelfJob::Kind::Stack : ShelfJob::Kind::Split;
                b.parts.push_back({j, 0, 1, host_height, t});
                ss.s1.erase(ss.s1.begin() + static_cast<std::ptrdiff_t>(std::max(si, *host)));
                ss.s1.erase(ss.s1.begin() + static_cast<std::ptrdiff_t>(std::min(si, *host)));
                place_block(inst, ss, std::move(b));
                ++stats.t4;
                continue;
            }
        }
        break;
    }

    check_transformation_properties(inst, ss);
    return stats;
}

Layout layout_contiguous(const Instance& inst, const ShelfSchedule& ss,
                         std::span<const ShelfJob* const> shelf1_order, std::span<const TopJob> tops,
                         Side side) {
    const int m = ss.m;
    const int region = ss.shelf1_width();
    Layout out;
    out.load.assign(static_cast<std::size_t>(m), Rat(0));
    auto& placements = out.schedule.placements;

    auto emit = [&](const ShelfJob& b, int first) {
        for (const Part& p : b.parts) {
            placements.push_back({inst.jobs[p.job].id, first + p.col, p.width, p.start, p.duration, {}});
            for (int c = first + p.col; c < first + p.col + p.width; ++c) out.load[static_cast<std::size_t>(c)] += p.duration;
        }
    };

    int shelf1_used = ss.split ? ss.split->width - ss.split_tall : 0;
    for (const ShelfJob* b : shelf1_order) shelf1_used += b->width;
    if (shelf1_used > region) throw InvariantViolation("shelf 1 does not fit its region", ss.dump(inst));

    int region_begin = 0;
    if (side == Side::Left) {
        int pos = 0;
        for (const ShelfJob& b : ss.s0) {
            emit(b, pos);
            pos += b.width;
        }
        if (ss.split) {
            emit(*ss.split, pos);
            pos += ss.split->width;
        }
        region_begin = m - region;
        for (const ShelfJob* b : shelf1_order) {
            emit(*b, pos);
            pos += b->width;
        }
    } else {
        int pos = 0;
        for (const ShelfJob* b : shelf1_order) {
            emit(*b, pos);
            pos += b->width;
        }
        pos = region;
        if (ss.split) {
            ShelfJob mirrored = *ss.split;
            mirrored.mirror();
            const int rest = ss.split->width - ss.split_tall;
            emit(mirrored, region - rest);
            pos = region - rest + mirrored.width;
        }
        for (const ShelfJob& b : ss.s0) {
            emit(b, pos);
            pos += b.width;
        }
        region_begin = 0;
    }

    int top_width = 0;
    for (const TopJob& t : tops) top_width += t.width;
    if (top_width > region) throw InvariantViolation("shelf 2 wider than the shelf-1 region", ss.dump(inst));
    const Rat lam_d = ss.lambda * ss.d;
    int pos = region_begin + region - top_width;
    for (const TopJob& t : tops) {
        placements.push_back({inst.jobs[t.job].id, pos, t.width, lam_d - t.height, t.height, {}});
        for (int c = pos; c < pos + t.width; ++c) out.load[static_cast<std::size_t>(c)] += t.height;
        pos += t.width;
    }

    for (const Rat& l : out.load) out.max_load = max(out.max_load, l);
    out.schedule.recompute_makespan();
    return out;
}

namespace {

std::vector<const ShelfJob*> shelf1_descending(const Instance& inst, const ShelfSchedule& ss) {
    std::vector<const ShelfJob*> order;
    order.reserve(ss.s1.size());
    for (const ShelfJob& b : ss.s1) order.push_back(&b);
    std::vector<Rat> heights;
    std::stable_sort(order.begin(), order.end(), [&](const ShelfJob* a, const ShelfJob* b) {
        return less_by_height_then_id(inst, b->height(), b->lead_job(), a->height(), a->lead_job());
    });
    return order;
}

std::vector<TopJob> tops_of(const ShelfSchedule& ss) {
    std::vector<TopJob> tops;
    for (const ShelfJob& b : ss.s2) tops.push_back({b.lead_job(), b.width, b.parts.front().duration});
    return tops;
}

std::optional<Schedule> first_fitting(const Instance& inst, const ShelfSchedule& ss,
                                      std::span<const ShelfJob* const> order, std::span<const TopJob> tops) {
    const Rat lam_d = ss.lambda * ss.d;
    for (Side side : {Side::Left, Side::Right}) {
        if (side == Side::Right && !ss.split) break;
        Layout layout = layout_contiguous(inst, ss, order, tops, side);
        if (layout.max_load <= lam_d) return std::move(layout.schedule);
    }
    return std::nullopt;
}

}  // namespace

Schedule repair_s2_small_q(const Instance& inst, ShelfSchedule ss) {
    const int region = ss.shelf1_width();
    std::vector<TopJob> tops = tops_of(ss);
    int m2 = ss.m2();
    if (m2 > region && m2 >= 3 * region)
        throw InvariantViolation("shelf 2 uses at least 3(m - m0) machines at repair entry", ss.dump(inst));
    while (m2 > region) {
        auto lowest = std::min_element(tops.begin(), tops.end(), [&](const TopJob& a, const TopJob& b) {
            return less_by_height_then_id(inst, a.height, a.job, b.height, b.job);
        });
        if (lowest->width == 1) throw InvariantViolation("cannot compress a single-machine shelf-2 job", ss.dump(inst));
        --lowest->width;
        lowest->height = inst.jobs[lowest->job].time(lowest->width);
        --m2;
    }
    std::sort(tops.begin(), tops.end(), [&](const TopJob& a, const TopJob& b) {
        return less_by_height_then_id(inst, a.height, a.job, b.height, b.job);
    });
    const auto order = shelf1_descending(inst, ss);
    if (auto s = first_fitting(inst, ss, order, tops)) return std::move(*s);
    throw InvariantViolation("repair_s2_small_q: some machine exceeds lambda d", ss.dump(inst));
}

Schedule repair_s2_large_q(const Instance& inst, ShelfSchedule ss) {
    const int region = ss.shelf1_width();
    if (ss.m2() <= region) return repair_s2_small_q(inst, std::move(ss));
    if (ss.s2.size() > 1)
        throw InvariantViolation("more than one shelf-2 job with q > (m - m0)/6", ss.dump(inst));

    const auto order = shelf1_descending(inst, ss);
    const std::size_t j0 = ss.s2.front().lead_job();
    const int q = ss.q();
    for (int i = 0; i <= region - q - 1; ++i) {
        const int w = region - i;
        const TopJob top{j0, w, inst.jobs[j0].time(w)};
        if (auto s = first_fitting(inst, ss, order, std::span<const TopJob>(&top, 1))) return std::move(*s);
    }
    throw InvariantViolation("repair_s2_large_q: no suffix of machines fits the shelf-2 job", ss.dump(inst));
}

namespace {

struct MachineGap {
    Rat bottom_end;
    Rat top_start;
    Rat load;
};

std::vector<MachineGap> machine_gaps(const Schedule& sched, int m, const Rat& horizon) {
    std::vector<std::vector<std::pair<Rat, Rat>>> busy(static_cast<std::size_t>(m));
    for (const PlacedJob& p : sched.placements)
        for (int c : p.machine_list()) {
            if (c < 0 || c >= m) throw ContractViolation("add_small_jobs: machine index out of range");
            busy[static_cast<std::size_t>(c)].emplace_back(p.start, p.end());
        }
    std::vector<MachineGap> gaps(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) {
        auto& iv = busy[static_cast<std::size_t>(c)];
        std::sort(iv.begin(), iv.end());
        MachineGap& g = gaps[static_cast<std::size_t>(c)];
        std::size_t lo = 0;
        while (lo < iv.size() && iv[lo].first == g.bottom_end) g.bottom_end = iv[lo++].second;
        std::size_t hi = iv.size();
        g.top_start = horizon;
        while (hi > lo && iv[hi - 1].second == g.top_start) g.top_start = iv[--hi].first;
        if (hi != lo || g.bottom_end > g.top_start)
            throw ContractViolation("add_small_jobs: machine " + std::to_string(c) + " has more than one idle gap");
        for (const auto& [s, e] : iv) g.load += e - s;
    }
    return gaps;
}

}  // namespace

Schedule add_small_jobs(const Schedule& sched, const Instance& inst, std::span<const std::size_t> small,
                        const Rat& lambda, const Rat& d) {
    Schedule out = sched;
    if (small.empty()) return out;
    const Rat horizon = lambda * d;
    auto gaps = machine_gaps(sched, inst.m, horizon);

    using Entry = std::pair<Rat, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> least_loaded;
    for (int c = 0; c < inst.m; ++c) least_loaded.emplace(gaps[static_cast<std::size_t>(c)].load, c);

    for (std::size_t j : small) {
        const auto [load, c] = least_loaded.top();
        least_loaded.pop();
        MachineGap& g = gaps[static_cast<std::size_t>(c)];
        const Rat& t = inst.jobs[j].time(1);
        if (g.bottom_end + t > g.top_start)
            throw InvariantViolation("small job " + std::to_string(inst.jobs[j].id) + " overflows machine " +
                                     std::to_string(c));
        out.placements.push_back({inst.jobs[j].id, c, 1, g.bottom_end, t, {}});
        g.bottom_end += t;
        g.load += t;
        least_loaded.emplace(g.load, c);
    }
    out.recompute_makespan();
    return out;
}

void left_shift(Schedule& sched) {
    std::vector<std::size_t> order(sched.placements.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return sched.placements[a].start < sched.placements[b].start;
    });
    int machines = 0;
    for (const PlacedJob& p : sched.placements)
        for (int c : p.machine_list()) machines = std::max(machines, c + 1);
    std::vector<Rat> available(static_cast<std::size_t>(machines));
    for (std::size_t i : order) {
        PlacedJob& p = sched.placements[i];
        const auto cols = p.machine_list();
        Rat start;
        for (int c : cols) start = max(start, available[static_cast<std::size_t>(c)]);
        if (start < p.start) p.start = start;
        for (int c : cols) available[static_cast<std::size_t>(c)] = p.end();
    }
    sched.recompute_makespan();
}

}  // namespace moldable
