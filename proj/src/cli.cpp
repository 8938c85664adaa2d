#include "moldable/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "moldable/driver.hpp"
#include "moldable/gen.hpp"
#include "moldable/io.hpp"
#include "moldable/verify.hpp"

namespace moldable::cli {

namespace {

std::optional<Instance> load_instance(const std::string& path, std::ostream& log) {
    try {
        Instance inst = parse_instance(read_file(path));
        const auto bad = validate_instance(inst);
        if (!bad.empty()) {
            log << "invalid instance " << path << ":\n";
            for (const Violation& v : bad) log << "  " << v.describe(inst) << "\n";
            return std::nullopt;
        }
        return inst;
    } catch (const ParseError& e) {
        log << path << ": " << e.what() << "\n";
    } catch (const std::runtime_error& e) {
        log << e.what() << "\n";
    }
    return std::nullopt;
}

}  // namespace

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& log) {
    const auto inst = load_instance(args.instance_path, log);
    if (!inst) return BadInput;
    if (args.epsilon.sign() <= 0 || args.epsilon > Rat(1)) {
        log << "epsilon must lie in (0, 1]\n";
        return BadInput;
    }

    const auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    try {
        res = solve(*inst, args.epsilon);
    } catch (const InvariantViolation& e) {
        log << "internal invariant violated: " << e.what() << "\n" << e.dump();
        return Internal;
    }
    const double wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    const std::string doc = emit_schedule({res.schedule, res.lambda_used, res.accepted_d});
    try {
        if (args.out_path.empty())
            out << doc;
        else
            write_file(args.out_path, doc);
        if (args.gantt_path) write_file(*args.gantt_path, gantt_svg(*inst, res.schedule));
    } catch (const std::runtime_error& e) {
        log << e.what() << "\n";
        return BadInput;
    }

    log << "makespan    " << res.makespan << " (" << res.makespan.to_double() << ")\n"
        << "accepted_d  " << res.accepted_d << " (" << res.accepted_d.to_double() << ")\n"
        << "lambda      " << res.lambda_used << " (" << res.lambda_used.to_double() << ")\n"
        << "iterations  " << res.iterations << "\n"
        << "wall_ms     " << std::fixed << std::setprecision(1) << wall_ms << std::defaultfloat << "\n";
    return Ok;
}

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& log) {
    if (args.n < 0 || args.m < 1) {
        log << "need n >= 0 and m >= 1\n";
        return BadInput;
    }
    GenConfig cfg;
    cfg.n = args.n;
    cfg.m = args.m;
    cfg.seed = args.seed;
    const std::string doc = emit_instance(generate(cfg));
    try {
        if (args.out_path.empty())
            out << doc;
        else
            write_file(args.out_path, doc);
    } catch (const std::runtime_error& e) {
        log << e.what() << "\n";
        return BadInput;
    }
    return Ok;
}

int cmd_verify(const std::string& instance_path, const std::string& schedule_path, bool contiguous,
               std::ostream& out, std::ostream& log) {
    const auto inst = load_instance(instance_path, log);
    if (!inst) return BadInput;
    ScheduleFile file;
    try {
        file = parse_schedule(read_file(schedule_path));
    } catch (const std::runtime_error& e) {
        log << schedule_path << ": " << e.what() << "\n";
        return BadInput;
    }

    std::set<JobId> ids;
    for (const Job& j : inst->jobs) ids.insert(j.id);
    for (const PlacedJob& p : file.schedule.placements)
        if (!ids.count(p.job)) {
            log << "schedule refers to job " << p.job << ", which the instance does not contain\n";
            return BadInput;
        }

    const VerificationReport rep = validate_schedule(*inst, file.schedule, contiguous);
    for (const ScheduleViolation& v : rep.violations) out << v.describe() << "\n";
    out << (rep.feasible ? "feasible" : "infeasible") << " makespan " << rep.makespan
        << (rep.contiguous ? " contiguous" : " non-contiguous") << "\n";
    return rep.feasible ? Ok : Infeasible;
}

namespace {

using json = nlohmann::json;

template <class T>
std::vector<T> list_of(const json& grid, const char* key) {
    if (!grid.contains(key)) throw ParseError(std::string("bench grid: missing \"") + key + "\"");
    const json& v = grid[key];
    std::vector<T> out;
    if (v.is_array())
        for (const json& x : v) out.push_back(x.get<T>());
    else
        out.push_back(v.get<T>());
    return out;
}

Rat epsilon_of(const json& v) {
    // numbers are re-read from their shortest decimal text so 0.05 stays 1/20
    return Rat::parse(v.is_string() ? v.get<std::string>() : v.dump());
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

}  // namespace

std::vector<BenchTask> parse_bench_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("bench config: ") + e.what());
    }
    std::vector<BenchTask> tasks;
    if (!doc.contains("grids")) return tasks;
    try {
        for (const json& grid : doc["grids"]) {
            std::vector<Rat> eps;
            if (grid.contains("epsilon")) {
                const json& e = grid["epsilon"];
                if (e.is_array())
                    for (const json& x : e) eps.push_back(epsilon_of(x));
                else
                    eps.push_back(epsilon_of(e));
            } else {
                eps.emplace_back(1, 20);
            }
            for (int n : list_of<int>(grid, "n"))
                for (int m : list_of<int>(grid, "m"))
                    for (std::uint64_t s : list_of<std::uint64_t>(grid, "seeds"))
                        for (const Rat& e : eps) tasks.push_back({n, m, s, e});
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bench config: ") + e.what());
    }
    std::stable_sort(tasks.begin(), tasks.end(), [](const BenchTask& a, const BenchTask& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.m != b.m) return a.m < b.m;
        if (a.seed != b.seed) return a.seed < b.seed;
        return a.epsilon < b.epsilon;
    });
    return tasks;
}

std::vector<BenchRow> run_bench(const std::vector<BenchTask>& tasks, int workers) {
    std::vector<BenchRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const BenchTask& t = tasks[i];
            BenchRow& r = rows[i];
            r.n = t.n;
            r.m = t.m;
            r.seed = t.seed;
            r.epsilon = t.epsilon;
            try {
                GenConfig cfg;
                cfg.n = t.n;
                cfg.m = t.m;
                cfg.seed = t.seed;
                const Instance inst = generate(cfg);
                const auto t0 = std::chrono::steady_clock::now();
                const SolveResult res = solve(inst, t.epsilon);
                r.wall_ms =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
                r.makespan = res.makespan;
                r.accepted_d = res.accepted_d;
                r.lambda_used = res.lambda_used;
                r.iterations = res.iterations;
                if (res.lower_bound.sign() > 0) r.ratio_vs_lower_bound = (res.makespan / res.lower_bound).to_double();
            } catch (const InvariantViolation& e) {
                r.error = "invariant";
            } catch (const ContractViolation& e) {
                r.error = "contract";
            } catch (const std::exception& e) {
                r.error = "exception";
            }
        }
    };
    const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    for (int k = 1; k < n_threads; ++k) pool.emplace_back(work);
    work();
    for (std::thread& th : pool) th.join();
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream os;
    os << "n,m,seed,epsilon,makespan,accepted_d,lambda_used,ratio_vs_lower_bound,wall_ms,iterations,error\n";
    for (const BenchRow& r : rows) {
        os << r.n << ',' << r.m << ',' << r.seed << ',' << r.epsilon << ',';
        if (r.error.empty())
            os << r.makespan << ',' << r.accepted_d << ',' << r.lambda_used << ',' << std::fixed
               << std::setprecision(6) << r.ratio_vs_lower_bound << ',' << std::setprecision(1) << r.wall_ms
               << std::defaultfloat << ',' << r.iterations << ",\n";
        else
            os << ",,,,,," << r.error << "\n";
    }
    return os.str();
}

std::string bench_plot_svg(const std::vector<BenchRow>& rows) {
    std::map<std::pair<int, int>, std::vector<double>> times;
    for (const BenchRow& r : rows)
        if (r.error.empty() && r.m > 0) times[{r.n, r.m}].push_back(r.wall_ms);

    struct Point {
        double x, y;
        int n, m;
    };
    std::vector<Point> pts;
    double max_x = 1, max_y = 1;
    for (const auto& [key, v] : times) {
        pts.push_back({static_cast<double>(key.first) / key.second, median(v), key.first, key.second});
        max_x = std::max(max_x, pts.back().x);
        max_y = std::max(max_y, pts.back().y);
    }
    const double w = 640, h = 400, left = 60, top = 20, pw = w - left - 20, ph = h - top - 50;
    auto px = [&](double x) { return left + x / max_x * pw; };
    auto py = [&](double y) { return top + ph - y / max_y * ph; };

    std::ostringstream os;
    os << std::fixed << std::setprecision(1);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << h - 10 << "\" text-anchor=\"middle\">n / m (max "
       << std::setprecision(2) << max_x << ")</text>\n";
    os << std::setprecision(1);
    os << "<text x=\"10\" y=\"" << top + 10 << "\">median ms (max " << max_y << ")</text>\n";
    for (const Point& p : pts) {
        os << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y) << "\" r=\"3\" fill=\"steelblue\"/>\n";
        os << "<text x=\"" << px(p.x) + 4 << "\" y=\"" << py(p.y) - 4 << "\">n=" << p.n << " m=" << p.m
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& log) {
    std::vector<BenchTask> tasks;
    try {
        tasks = parse_bench_config(read_file(args.config_path));
    } catch (const std::runtime_error& e) {
        log << e.what() << "\n";
        return BadInput;
    }
    const auto rows = run_bench(tasks, args.workers);
    try {
        const std::string csv = bench_csv(rows);
        if (args.out_csv.empty())
            out << csv;
        else
            write_file(args.out_csv, csv);
        if (args.plot_path) write_file(*args.plot_path, bench_plot_svg(rows));
    } catch (const std::runtime_error& e) {
        log << e.what() << "\n";
        return BadInput;
    }
    const auto failed = std::count_if(rows.begin(), rows.end(), [](const BenchRow& r) { return !r.error.empty(); });
    log << rows.size() << " rows, " << failed << " with errors, " << args.workers << " workers\n";
    return Ok;
}

int workers_from_env() {
    if (const char* v = std::getenv("MOLDABLE_WORKERS")) {
        char* end = nullptr;
        const long n = std::strtol(v, &end, 10);
        if (end != v && *end == '\0' && n > 0 && n <= 1024) return static_cast<int>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace moldable::cli
