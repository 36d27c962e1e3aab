#ifndef GCP_JOBS_HPP
#define GCP_JOBS_HPP

#include <optional>
#include <string>
#include <vector>

#include "gcp/textio.hpp"

namespace gcp {

struct RunFlags {
  Field field;
  std::optional<Window> window;
  std::optional<int> wordlen;
  uint64_t seed = 20240901;
  int count = 100;
};

struct ReportLine {
  std::string key, value;
};

struct Report {
  std::string job;
  std::string kind;
  std::string name;
  std::vector<ReportLine> lines;
  std::string payload;  // verbatim output (emitted documents, expressions)
  std::string status;   // certified | refuted | inconclusive | ok | failed
  long timing_ms = 0;

  void put(const std::string& key, const std::string& value) { lines.push_back({key, value}); }
  int exit_code() const;
};

// Dispatches a parsed document through the verifiers.  command is one of
// check-realization, check-grcp1, check-steinberg, build-lpa, build-groupoid,
// decompose.
Report run_job(const std::string& command, const InputDocument& doc, const RunFlags& flags);

// Seeded randomized suites (annihilator formula, indicator decomposition,
// exact linear algebra dimension laws).
Report run_fuzz(const RunFlags& flags);

// format: "text" (human readable) or "structured" (line-delimited key = value)
std::string emit_report(const Report& rep, const std::string& format);

Window window_from_flags(const RunFlags& flags);

}  // namespace gcp

#endif
