#include "memnn/signal.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace memnn {

double SignalTrace::start_time() const {
  if (points.empty()) throw std::invalid_argument("signal trace is empty");
  return points.front().t;
}

double SignalTrace::end_time() const {
  if (points.empty()) throw std::invalid_argument("signal trace is empty");
  return points.back().t;
}

void validate(const SignalTrace& trace) {
  for (std::size_t k = 0; k < trace.points.size(); ++k) {
    const Breakpoint& p = trace.points[k];
    if (!std::isfinite(p.t) || !std::isfinite(p.value))
      throw std::invalid_argument("signal trace holds a non-finite breakpoint");
    if (k > 0 && !(trace.points[k - 1].t < p.t))
      throw std::invalid_argument("signal trace times must strictly increase");
  }
}

double sample_at(const SignalTrace& trace, double t) {
  const auto& pts = trace.points;
  if (pts.empty()) throw std::invalid_argument("signal trace is empty");
  if (t < pts.front().t || t > pts.back().t)
    throw std::out_of_range("sample time outside the trace span");
  // First breakpoint with time >= t; exact hits return the stored value.
  auto it = std::lower_bound(pts.begin(), pts.end(), t,
                             [](const Breakpoint& p, double x) { return p.t < x; });
  if (it->t == t) return it->value;
  const Breakpoint& hi = *it;
  const Breakpoint& lo = *(it - 1);
  const double f = (t - lo.t) / (hi.t - lo.t);
  return lo.value + f * (hi.value - lo.value);
}

SignalTrace resample(const SignalTrace& trace, double t0, double dt, int n) {
  if (n < 1) throw std::invalid_argument("resample needs at least one sample");
  if (!(dt > 0)) throw std::invalid_argument("resample step must be positive");
  SignalTrace out;
  out.unit = trace.unit;
  out.points.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = t0 + k * dt;
    out.points.push_back({t, sample_at(trace, t)});
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  const char* first = text.data();
  const char* last = first + text.size();
  double v = 0.0;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
    throw std::invalid_argument("not a finite decimal number: '" + text + "'");
  return v;
}

namespace {

std::string line_msg(const char* what, std::size_t line_no) {
  std::ostringstream os;
  os << "line " << line_no << ": " << what;
  return os.str();
}

void append_point(SignalTrace& trace, double t, double value, std::size_t line_no) {
  if (!trace.points.empty() && !(trace.points.back().t < t))
    throw std::invalid_argument(line_msg("times must strictly increase", line_no));
  trace.points.push_back({t, value});
}

bool parses_as_number(const std::string& text) {
  try {
    parse_double(text);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
  return out;
}

}  // namespace

SignalTrace read_pwl(std::istream& in) {
  SignalTrace trace;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trimmed(line).empty()) continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    fields >> a >> b;
    if (b.empty() || (fields >> extra))
      throw std::invalid_argument(line_msg("expected two numbers per line", line_no));
    double t, v;
    try {
      t = parse_double(a);
      v = parse_double(b);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(line_msg("expected two numbers per line", line_no));
    }
    append_point(trace, t, v, line_no);
  }
  if (trace.points.empty()) throw std::invalid_argument("PWL input holds no breakpoints");
  return trace;
}

SignalTrace read_pwl_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_pwl(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_pwl(std::ostream& out, const SignalTrace& trace) {
  if (trace.points.empty()) throw std::invalid_argument("refusing to write an empty trace");
  validate(trace);
  for (const Breakpoint& p : trace.points)
    out << format_double(p.t) << ' ' << format_double(p.value) << '\n';
}

void write_pwl_file(const std::string& path, const SignalTrace& trace) {
  auto out = open_output(path);
  write_pwl(out, trace);
}

SignalTrace read_csv_trace(std::istream& in) {
  SignalTrace trace;
  std::string line;
  std::size_t line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trimmed(line);
    if (body.empty()) continue;
    std::vector<std::string> fields;
    std::string cell;
    std::istringstream split(body);
    while (std::getline(split, cell, ',')) fields.push_back(trimmed(cell));
    if (!body.empty() && body.back() == ',') fields.push_back("");
    if (first_data_line) {
      first_data_line = false;
      if (!fields.empty() && !parses_as_number(fields[0])) continue;  // header
    }
    if (fields.size() != 2)
      throw std::invalid_argument(line_msg("expected two comma-separated columns", line_no));
    double t, v;
    try {
      t = parse_double(fields[0]);
      v = parse_double(fields[1]);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(line_msg("expected two numeric columns", line_no));
    }
    append_point(trace, t, v, line_no);
  }
  if (trace.points.empty()) throw std::invalid_argument("CSV input holds no data rows");
  return trace;
}

SignalTrace read_csv_trace_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_csv_trace(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace memnn
