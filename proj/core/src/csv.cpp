#include "percolate/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

namespace percolate {

namespace {

void append_fraction(std::string& out, double value) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.9g", value);
  out.append(buf, static_cast<std::size_t>(len));
}

template <typename T>
T parse_field(std::string_view field, const char* name, std::size_t line) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() ||
      field.empty()) {
    throw CsvError("bad " + std::string(name) + " value '" +
                       std::string(field) + "'",
                   line);
  }
  return value;
}

double parse_double(std::string_view field, const char* name,
                    std::size_t line) {
  const std::string copy(field);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw CsvError("bad " + std::string(name) + " value '" + copy + "'", line);
  }
  return value;
}

bool fraction_matches(double written, double exact) {
  return std::fabs(written - exact) <= 1e-8 * std::max(1.0, std::fabs(exact));
}

}  // namespace

std::string format_series_csv(const TimeSeries& series,
                              const std::vector<std::string>& comments) {
  std::string out;
  out.reserve(64 * (series.points.size() + 4));
  out += "# n=" + std::to_string(series.n) + "\n";
  for (const auto& c : comments) {
    out += "# ";
    out += c;
    out += '\n';
  }
  out += kSeriesHeader;
  out += '\n';
  const double n = static_cast<double>(series.n);
  for (const auto& p : series.points) {
    out += std::to_string(p.step);
    out += ',';
    append_fraction(out, static_cast<double>(p.step) / n);
    out += ',';
    out += std::to_string(p.l1);
    out += ',';
    append_fraction(out, static_cast<double>(p.l1) / n);
    out += ',';
    out += std::to_string(p.alpha);
    out += ',';
    out += std::to_string(p.component_count);
    out += ',';
    out += std::to_string(p.edge_count);
    out += '\n';
  }
  return out;
}

void write_file_atomically(const std::filesystem::path& path,
                           const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw CsvError("cannot open " + tmp.string() + " for writing", 0);
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!file) throw CsvError("write failed for " + tmp.string(), 0);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw CsvError("cannot move " + tmp.string() + " to " + path.string() +
                       ": " + ec.message(),
                   0);
  }
}

void write_csv(const TimeSeries& series, const std::filesystem::path& path,
               const std::vector<std::string>& comments) {
  write_file_atomically(path, format_series_csv(series, comments));
}

TimeSeries parse_series_csv(const std::string& text) {
  TimeSeries series;
  bool have_n = false;
  bool have_header = false;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body(line);
      body.remove_prefix(1);
      while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      if (!have_n && body.starts_with("n=")) {
        series.n = parse_field<std::uint32_t>(body.substr(2), "n", line_no);
        if (series.n == 0) throw CsvError("n must be positive", line_no);
        have_n = true;
      }
      continue;
    }
    if (!have_header) {
      if (line != kSeriesHeader) {
        throw CsvError("expected header '" + std::string(kSeriesHeader) +
                           "', got '" + line + "'",
                       line_no);
      }
      if (!have_n) throw CsvError("missing '# n=' line before header", line_no);
      have_header = true;
      continue;
    }

    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 7) {
      throw CsvError("expected 7 fields, got " + std::to_string(fields.size()),
                     line_no);
    }
    TimeSeriesPoint p;
    p.step = parse_field<std::uint64_t>(fields[0], "step", line_no);
    const double frac_steps = parse_double(fields[1], "frac_steps", line_no);
    p.l1 = parse_field<std::uint32_t>(fields[2], "L1", line_no);
    const double l1_frac = parse_double(fields[3], "L1_frac", line_no);
    p.alpha = parse_field<std::uint32_t>(fields[4], "alpha", line_no);
    p.component_count =
        parse_field<std::uint32_t>(fields[5], "n_components", line_no);
    p.edge_count = parse_field<std::uint64_t>(fields[6], "n_edges", line_no);

    const double n = static_cast<double>(series.n);
    if (!fraction_matches(frac_steps, static_cast<double>(p.step) / n)) {
      throw CsvError("frac_steps inconsistent with step and n", line_no);
    }
    if (!fraction_matches(l1_frac, static_cast<double>(p.l1) / n)) {
      throw CsvError("L1_frac inconsistent with L1 and n", line_no);
    }
    if (p.l1 == 0 || p.l1 > series.n || p.component_count == 0 ||
        p.component_count > series.n) {
      throw CsvError("L1 or n_components outside [1, n]", line_no);
    }
    series.points.push_back(p);
  }
  if (!have_header) throw CsvError("missing header", line_no);
  return series;
}

TimeSeries read_csv(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw CsvError("cannot open " + path.string(), 0);
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_series_csv(buf.str());
}

}  // namespace percolate
