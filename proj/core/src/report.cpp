#include "strmon/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "strmon/errors.hpp"

namespace strmon {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string envelope_to_csv(const Envelope& e) {
  std::ostringstream out;
  out << "dt,dx\n";
  for (std::size_t k = 0; k < e.size(); ++k)
    out << k << "," << format_double(e[k]) << "\n";
  return out.str();
}

void write_envelope_csv(const Envelope& e, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << envelope_to_csv(e);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

Envelope read_envelope_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) ||
      (line != "dt,dx" && line != "dt,dx\r"))
    throw ParseError("envelope file must start with header 'dt,dx'", 1, 1);
  std::vector<double> dx;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("expected 'dt,dx' row", line_no, 1);
    std::int64_t dt = 0;
    auto res = std::from_chars(line.data(), line.data() + comma, dt);
    if (res.ec != std::errc{} || res.ptr != line.data() + comma)
      throw ParseError("malformed dt index", line_no, 1);
    if (dt != static_cast<std::int64_t>(dx.size()))
      throw ParseError("dt indices must be 0,1,2,...", line_no, 1);
    std::string value = line.substr(comma + 1);
    while (!value.empty() && (value.back() == '\r' || value.back() == ' '))
      value.pop_back();
    if (value == "inf") {
      dx.push_back(kInf);
      continue;
    }
    double v = 0.0;
    auto vres = std::from_chars(value.data(), value.data() + value.size(), v);
    if (vres.ec != std::errc{} || vres.ptr != value.data() + value.size())
      throw ParseError("malformed dx value '" + value + "'", line_no, 1);
    dx.push_back(v);
  }
  return Envelope(std::move(dx));
}

std::string spec_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf, 16);
}

namespace {

nlohmann::ordered_json envelope_json(const Envelope& e) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (std::isinf(e[k]))
      arr.push_back("inf");
    else
      arr.push_back(e[k]);
  }
  return arr;
}

}  // namespace

std::string report_json(
    const ReportInputs& inputs, const Envelope& root,
    const std::vector<std::pair<std::string, Envelope>>& subformulas,
    const KindTimings& timing_ms, bool domain_truncated) {
  nlohmann::ordered_json doc;
  doc["spec_hash"] = inputs.spec_hash;
  doc["t"] = inputs.t;
  doc["dt_max"] = inputs.dt_max;
  doc["norm"] = inputs.norm;
  doc["padding"] = inputs.padding;
  doc["violated"] = root.empty();
  doc["truncated"] = domain_truncated;
  doc["root_envelope"] = envelope_json(root);
  nlohmann::ordered_json subs = nlohmann::ordered_json::object();
  for (const auto& [label, env] : subformulas) subs[label] = envelope_json(env);
  doc["subformulas"] = std::move(subs);
  nlohmann::ordered_json timing = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < timing_ms.size(); ++k)
    timing[kind_name(static_cast<NodeKind>(k))] = timing_ms[k];
  doc["timing_ms"] = std::move(timing);
  return doc.dump(2) + "\n";
}

}  // namespace strmon
