#ifndef STRMON_REPORT_HPP
#define STRMON_REPORT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "strmon/envelope.hpp"
#include "strmon/formula_monitor.hpp"

namespace strmon {

/// Envelope CSV: header `dt,dx`, one row per temporal level, `inf` for
/// unbounded entries. An empty envelope writes the header only.
void write_envelope_csv(const Envelope& e, const std::filesystem::path& path);
Envelope read_envelope_csv(const std::filesystem::path& path);

std::string envelope_to_csv(const Envelope& e);

/// FNV-1a 64-bit hash of the raw specification text, as 16 hex digits.
std::string spec_hash(const std::string& text);

struct ReportInputs {
  std::string spec_hash;
  std::int64_t t = 0;
  std::int64_t dt_max = 0;
  std::string norm;
  std::string padding;
};

/// Monitoring result document. Envelope entries serialize as numbers with
/// +inf as the string "inf"; timing_ms is the only run-dependent field.
std::string report_json(const ReportInputs& inputs, const Envelope& root,
                        const std::vector<std::pair<std::string, Envelope>>&
                            subformulas,
                        const KindTimings& timing_ms, bool domain_truncated);

std::string format_double(double v);

}  // namespace strmon

#endif  // STRMON_REPORT_HPP
