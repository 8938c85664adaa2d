#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "moldable/schedule.hpp"

namespace moldable {

/// Malformed input file. Line and column are 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// {"m": int, "jobs": [{"id": int, "times": ["p/q" | "decimal", ...]}]}.
/// Only the syntax is checked here; run validate_instance for monotony.
Instance parse_instance(std::string_view text);
std::string emit_instance(const Instance& inst);

struct ScheduleFile {
    Schedule schedule;
    Rat lambda;
    Rat accepted_d;
};

/// {"makespan", "lambda", "accepted_d", "placements": [{"job", "first_machine",
/// "width", "start", "duration"}]}. A placement may carry an explicit
/// "machines" list instead of a contiguous interval.
ScheduleFile parse_schedule(std::string_view text);
std::string emit_schedule(const ScheduleFile& file);

/// Gantt chart: machines on the y axis, time on the x axis, one <rect> per placement.
std::string gantt_svg(const Instance& inst, const Schedule& sched);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace moldable
