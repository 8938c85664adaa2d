#include "moldable/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace moldable {

using json = nlohmann::ordered_json;

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(line ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                              : what),
      line_(line),
      column_(column) {}

namespace {

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // e.byte is the 1-based offset of the offending character
        const std::size_t upto = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        if (const auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
        throw ParseError("malformed JSON: " + msg, line, col);
    }
}

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing \"" + key + "\"");
    return *it;
}

long as_long(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
    return v.get<long>();
}

int as_int(const json& v, const std::string& where) {
    const long x = as_long(v, where);
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw ParseError(where + ": integer out of range");
    return static_cast<int>(x);
}

Rat as_rat(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rat(v.get<long>());
    if (!v.is_string()) throw ParseError(where + ": expected a rational as a \"p/q\" or decimal string");
    try {
        return Rat::parse(v.get<std::string>());
    } catch (const std::exception& e) {
        throw ParseError(where + ": " + e.what());
    }
}

const json& as_array(const json& v, const std::string& where) {
    if (!v.is_array()) throw ParseError(where + ": expected an array");
    return v;
}

}  // namespace

Instance parse_instance(std::string_view text) {
    const json doc = parse_json(text);
    Instance inst;
    inst.m = as_int(field(doc, "m", "instance"), "m");
    const json& jobs = as_array(field(doc, "jobs", "instance"), "jobs");
    inst.jobs.reserve(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const std::string where = "jobs[" + std::to_string(i) + "]";
        Job job;
        job.id = as_long(field(jobs[i], "id", where), where + ".id");
        const json& times = as_array(field(jobs[i], "times", where), where + ".times");
        job.times.reserve(times.size());
        for (std::size_t k = 0; k < times.size(); ++k)
            job.times.push_back(as_rat(times[k], where + ".times[" + std::to_string(k) + "]"));
        inst.jobs.push_back(std::move(job));
    }
    return inst;
}

std::string emit_instance(const Instance& inst) {
    // Written by hand so each job stays on one line.
    std::string out = "{\n  \"m\": " + std::to_string(inst.m) + ",\n  \"jobs\": [";
    for (std::size_t i = 0; i < inst.jobs.size(); ++i) {
        const Job& job = inst.jobs[i];
        out += i ? ",\n    " : "\n    ";
        out += "{\"id\": " + std::to_string(job.id) + ", \"times\": [";
        for (std::size_t k = 0; k < job.times.size(); ++k) {
            if (k) out += ", ";
            out += '"' + job.times[k].str() + '"';
        }
        out += "]}";
    }
    out += inst.jobs.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

ScheduleFile parse_schedule(std::string_view text) {
    const json doc = parse_json(text);
    ScheduleFile f;
    f.schedule.makespan = as_rat(field(doc, "makespan", "schedule"), "makespan");
    if (doc.contains("lambda")) f.lambda = as_rat(doc["lambda"], "lambda");
    if (doc.contains("accepted_d")) f.accepted_d = as_rat(doc["accepted_d"], "accepted_d");
    const json& ps = as_array(field(doc, "placements", "schedule"), "placements");
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string where = "placements[" + std::to_string(i) + "]";
        PlacedJob p;
        p.job = as_long(field(ps[i], "job", where), where + ".job");
        p.width = as_int(field(ps[i], "width", where), where + ".width");
        p.start = as_rat(field(ps[i], "start", where), where + ".start");
        p.duration = as_rat(field(ps[i], "duration", where), where + ".duration");
        if (ps[i].contains("machines")) {
            const json& ms = as_array(ps[i]["machines"], where + ".machines");
            for (std::size_t k = 0; k < ms.size(); ++k)
                p.machines.push_back(as_int(ms[k], where + ".machines[" + std::to_string(k) + "]"));
            p.first_machine = p.machines.empty() ? 0 : *std::min_element(p.machines.begin(), p.machines.end());
        } else {
            p.first_machine = as_int(field(ps[i], "first_machine", where), where + ".first_machine");
        }
        f.schedule.placements.push_back(std::move(p));
    }
    return f;
}

std::string emit_schedule(const ScheduleFile& f) {
    json doc;
    doc["makespan"] = f.schedule.makespan.str();
    doc["lambda"] = f.lambda.str();
    doc["accepted_d"] = f.accepted_d.str();
    json ps = json::array();
    for (const PlacedJob& p : f.schedule.placements) {
        json e;
        e["job"] = p.job;
        e["first_machine"] = p.first_machine;
        e["width"] = p.width;
        e["start"] = p.start.str();
        e["duration"] = p.duration.str();
        if (!p.machines.empty()) e["machines"] = p.machines;
        ps.push_back(std::move(e));
    }
    doc["placements"] = std::move(ps);
    return doc.dump(2) + "\n";
}

std::string gantt_svg(const Instance& inst, const Schedule& sched) {
    const double plot_w = 960, left = 60, top = 20, bottom = 30;
    const int m = std::max(inst.m, 1);
    const double row = std::clamp(600.0 / m, 2.0, 24.0);
    const double height = top + row * m + bottom;
    const double span = sched.makespan.sign() > 0 ? sched.makespan.to_double() : 1.0;
    const double sx = plot_w / span;

    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << left + plot_w + 20 << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top + row * m << "\" x2=\"" << left + plot_w << "\" y2=\""
       << top + row * m << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left << "\" y=\"" << height - 8 << "\">0</text>\n";
    os << "<text x=\"" << left + plot_w << "\" y=\"" << height - 8 << "\" text-anchor=\"end\">" << sched.makespan.str()
       << " (" << span << ")</text>\n";
    const int label_every = std::max(1, static_cast<int>(std::ceil(12.0 / row)));
    for (int c = 0; c < inst.m; c += label_every)
        os << "<text x=\"" << left - 4 << "\" y=\"" << top + row * (c + 0.75) << "\" text-anchor=\"end\">M" << c
           << "</text>\n";
    for (const PlacedJob& p : sched.placements) {
        const auto cols = p.machine_list();
        const int lo = cols.empty() ? p.first_machine : *std::min_element(cols.begin(), cols.end());
        const int hi = cols.empty() ? p.first_machine : *std::max_element(cols.begin(), cols.end());
        const int hue = static_cast<int>((static_cast<unsigned long>(p.job) * 137u) % 360u);
        os << "<rect x=\"" << left + p.start.to_double() * sx << "\" y=\"" << top + row * lo << "\" width=\""
           << p.duration.to_double() * sx << "\" height=\"" << row * (hi - lo + 1) << "\" fill=\"hsl(" << hue
           << ",60%,70%)\" stroke=\"black\" stroke-width=\"0.5\""
           << (static_cast<int>(cols.size()) != hi - lo + 1 ? " stroke-dasharray=\"3,2\"" : "") << "><title>job "
           << p.job << " start " << p.start.str() << " duration " << p.duration.str() << "</title></rect>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace moldable
