#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace memnn {

/* One (time, value) breakpoint of a piecewise-linear signal. */
struct Breakpoint {
  double t = 0.0;
  double value = 0.0;
};

/* Piecewise-linear signal. Breakpoint times strictly increase and all
 * values are finite; between breakpoints the value is linearly
 * interpolated. `unit` is a free-text label ("V", "A", ...). */
struct SignalTrace {
  std::vector<Breakpoint> points;
  std::string unit;

  bool empty() const { return points.empty(); }
  double start_time() const;
  double end_time() const;
};

/* Throws std::invalid_argument when times do not strictly increase or a
 * value is non-finite. */
void validate(const SignalTrace& trace);

/* Linear interpolation, exact at breakpoints. Throws std::out_of_range
 * when t lies outside [start_time, end_time]. */
double sample_at(const SignalTrace& trace, double t);

/* n uniform samples at t0, t0 + dt, ...; every sample must fall inside
 * the trace span. */
SignalTrace resample(const SignalTrace& trace, double t0, double dt, int n);

/* Shortest decimal text that parses back to exactly the same double. */
std::string format_double(double v);

/* Strict full-token parse; throws std::invalid_argument on anything
 * else (including inf/nan, which traces never carry). */
double parse_double(const std::string& text);

/* PWL text format: one breakpoint per non-empty line, two
 * whitespace-separated decimal numbers (time then value). Written with
 * a single space separator. */
SignalTrace read_pwl(std::istream& in);
SignalTrace read_pwl_file(const std::string& path);
void write_pwl(std::ostream& out, const SignalTrace& trace);
void write_pwl_file(const std::string& path, const SignalTrace& trace);

/* Two-column CSV (time,value). A first line whose first field is not a
 * number is treated as a header and skipped. */
SignalTrace read_csv_trace(std::istream& in);
SignalTrace read_csv_trace_file(const std::string& path);

}  // namespace memnn
