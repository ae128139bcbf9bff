#include "strmon/signal.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "strmon/errors.hpp"

namespace strmon {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Strict, locale-independent double parse of a whole field.
double parse_double_field(std::string_view field, int line_no) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw ParseError("malformed number '" + std::string(field) + "'", line_no,
                     1);
  }
  if (!std::isfinite(v)) {
    throw ParseError("non-finite value '" + std::string(field) + "'", line_no,
                     1);
  }
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Signal::Signal(std::int64_t t_lo, std::vector<std::vector<double>> rows,
               PaddingPolicy padding)
    : t_lo_(t_lo), padding_(padding) {
  if (rows.empty()) throw Error("signal needs at least one row");
  n_ = static_cast<int>(rows.front().size());
  if (n_ < 1) throw Error("signal needs at least one dimension");
  t_hi_ = t_lo_ + static_cast<std::int64_t>(rows.size()) - 1;
  data_.reserve(rows.size() * static_cast<std::size_t>(n_));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_)
      throw Error("signal rows have inconsistent dimension");
    for (double v : row) {
      if (!std::isfinite(v)) throw Error("signal value is not finite");
      data_.push_back(v);
    }
  }
}

double Signal::value(int dim, std::int64_t t) const {
  if (!in_domain(t)) {
    if (padding_ == PaddingPolicy::Strict) {
      throw OutOfDomainError("time " + std::to_string(t) +
                             " outside signal domain [" +
                             std::to_string(t_lo_) + ";" +
                             std::to_string(t_hi_) + "]");
    }
    t = t < t_lo_ ? t_lo_ : t_hi_;
  }
  return data_[static_cast<std::size_t>(t - t_lo_) *
                   static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(dim)];
}

std::vector<double> Signal::sample(std::int64_t t) const {
  std::vector<double> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = value(i, t);
  return out;
}

std::vector<double> Signal::sample_shifted(std::int64_t t,
                                           const TemporalShift& shift) const {
  if (static_cast<int>(shift.deltas.size()) != n_)
    throw Error("temporal shift dimension mismatch");
  std::vector<double> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i)
    out[static_cast<std::size_t>(i)] =
        value(i, t - shift.deltas[static_cast<std::size_t>(i)]);
  return out;
}

Signal Signal::with_padding(PaddingPolicy padding) const {
  Signal copy = *this;
  copy.padding_ = padding;
  return copy;
}

Signal load_csv(const std::filesystem::path& path, PaddingPolicy padding) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty trace file", 1, 1);

  auto header = split_fields(trim(line));
  if (header.empty() || trim(header[0]) != "t")
    throw ParseError("trace header must start with 't'", 1, 1);
  const int n = static_cast<int>(header.size()) - 1;
  if (n < 1) throw ParseError("trace header names no dimensions", 1, 1);
  for (int i = 1; i <= n; ++i) {
    std::string want = "x" + std::to_string(i);
    if (trim(header[static_cast<std::size_t>(i)]) != want)
      throw ParseError("trace header column " + std::to_string(i + 1) +
                           " must be '" + want + "'",
                       1, 1);
  }

  std::vector<std::vector<double>> rows;
  std::int64_t t_lo = 0;
  std::int64_t expected_t = 0;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    auto trimmed = trim(line);
    if (trimmed.empty()) continue;
    auto fields = split_fields(trimmed);
    if (static_cast<int>(fields.size()) != n + 1)
      throw ParseError("expected " + std::to_string(n + 1) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no, 1);

    std::int64_t t = 0;
    auto tf = trim(fields[0]);
    auto res = std::from_chars(tf.data(), tf.data() + tf.size(), t);
    if (res.ec != std::errc{} || res.ptr != tf.data() + tf.size())
      throw ParseError("time index '" + std::string(tf) +
                           "' is not an integer",
                       line_no, 1);

    if (rows.empty()) {
      t_lo = t;
    } else if (t != expected_t) {
      throw ParseError("time indices must increase by 1 (expected " +
                           std::to_string(expected_t) + ", got " +
                           std::to_string(t) + ")",
                       line_no, 1);
    }
    expected_t = t + 1;

    std::vector<double> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      row[static_cast<std::size_t>(i)] =
          parse_double_field(trim(fields[static_cast<std::size_t>(i) + 1]),
                             line_no);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("trace file has no data rows", line_no, 1);
  return Signal(t_lo, std::move(rows), padding);
}

void save_csv(const Signal& sig, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "t";
  for (int i = 1; i <= sig.dim(); ++i) out << ",x" << i;
  out << "\n";
  for (std::int64_t t = sig.t_lo(); t <= sig.t_hi(); ++t) {
    out << t;
    for (int i = 0; i < sig.dim(); ++i) out << "," << format_double(sig.value(i, t));
    out << "\n";
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace strmon
