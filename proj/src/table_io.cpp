#include "fuzzrel/table_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <vector>

#include <fmt/format.h>

#include "fuzzrel/errors.hpp"

namespace fuzzrel {
namespace {

constexpr std::array<std::string_view, 4> kPrefixes{"x", "v", "y", "w"};

std::vector<std::string> header(bool has_beta) {
  std::vector<std::string> cols{"alpha"};
  for (std::size_t p = 0; p < kNumParameters; ++p) {
    if (p == static_cast<std::size_t>(Parameter::Beta) && !has_beta) continue;
    cols.push_back(fmt::format("{}_L", kPrefixes[p]));
    cols.push_back(fmt::format("{}_U", kPrefixes[p]));
  }
  cols.emplace_back("T_L");
  cols.emplace_back("T_U");
  return cols;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& cell, std::size_t line_no, std::size_t col) {
  double v = 0.0;
  const char* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(fmt::format("line {}, column {}: '{}' is not a number", line_no, col + 1, cell));
  }
  return v;
}

}  // namespace

std::string format_number(double v, NumberFormat f) {
  if (f == NumberFormat::Full) return fmt::format("{:.17g}", v);
  std::string s = fmt::format("{:.4f}", v);
  if (s == "-0.0000") s.erase(0, 1);
  return s;
}

void write_table_csv(std::ostream& out, const AlphaCutTable& table, NumberFormat f) {
  const std::vector<std::string> cols = header(table.has_beta);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const AlphaCutRow& r : table.rows) {
    // alpha keeps two decimals in the default view, like the published tables.
    out << (f == NumberFormat::Full ? format_number(r.alpha, f) : fmt::format("{:.2f}", r.alpha));
    for (std::size_t p = 0; p < kNumParameters; ++p) {
      if (p == static_cast<std::size_t>(Parameter::Beta) && !table.has_beta) continue;
      out << ',' << format_number(r.cuts[p].lo, f) << ',' << format_number(r.cuts[p].hi, f);
    }
    out << ',' << format_number(r.characteristic.lo, f) << ','
        << format_number(r.characteristic.hi, f) << '\n';
  }
}

AlphaCutTable read_table_csv(std::istream& in, const Metric& metric) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty table");
  const std::vector<std::string> head = split(line);
  bool has_beta = false;
  if (head == header(true)) {
    has_beta = true;
  } else if (head != header(false)) {
    throw ParseError(fmt::format("line 1: unexpected header '{}'", line));
  }

  AlphaCutTable table;
  table.metric = metric;
  table.has_beta = has_beta;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != head.size()) {
      throw ParseError(fmt::format("line {}: expected {} columns, got {}", line_no, head.size(), cells.size()));
    }
    AlphaCutRow row;
    std::size_t col = 0;
    row.alpha = parse_double(cells[col], line_no, col);
    ++col;
    for (std::size_t p = 0; p < kNumParameters; ++p) {
      if (p == static_cast<std::size_t>(Parameter::Beta) && !has_beta) continue;
      row.cuts[p].lo = parse_double(cells[col], line_no, col);
      row.cuts[p].hi = parse_double(cells[col + 1], line_no, col + 1);
      col += 2;
    }
    row.characteristic.lo = parse_double(cells[col], line_no, col);
    row.characteristic.hi = parse_double(cells[col + 1], line_no, col + 1);
    table.rows.push_back(row);
  }
  table.validate();
  return table;
}

void write_curve_csv(std::ostream& out, const MembershipCurve& curve, NumberFormat f) {
  out << "alpha,lower,upper\n";
  for (const CurveRow& r : curve.rows()) {
    out << (f == NumberFormat::Full ? format_number(r.alpha, f) : fmt::format("{:.2f}", r.alpha))
        << ',' << format_number(r.cut.lo, f) << ',' << format_number(r.cut.hi, f) << '\n';
  }
}

void write_membership_samples_csv(std::ostream& out, const MembershipCurve& curve, int samples,
                                  NumberFormat f) {
  if (samples < 2) throw ValidationError("need at least 2 membership samples");
  const Interval base = curve.rows().front().cut;
  out << "z,membership\n";
  for (int i = 0; i < samples; ++i) {
    const double z = i == samples - 1 ? base.hi
                                      : base.lo + base.width() * static_cast<double>(i) / (samples - 1);
    out << format_number(z, f) << ',' << format_number(curve.membership_at(z), f) << '\n';
  }
}

}  // namespace fuzzrel
