#ifndef TANAKA_JOBS_HPP
#define TANAKA_JOBS_HPP

#include <stdexcept>
#include <string>

namespace tanaka {

/// Malformed job input: bad JSON, unknown or missing keys, values outside
/// the documented grammar, or descriptors that do not resolve. The CLI maps
/// this to exit code 2.
struct JobError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Process-level switches merged into a job before it runs; each one forces
/// the matching job field on (a job file may also set them itself).
struct JobOptions {
  bool emit_bases = false;
  bool emit_brackets = false;
  bool require_finite = false;
};

/// Outcome of a completed job. `exit_code` is 0 on success, 3 when the run
/// finished but a verdict it computed is negative (a failed check), and 4
/// when the result is Capped and finiteness was required; in the nonzero
/// cases `error_code`/`error_message` describe the condition and the report
/// is still complete. Input failures (exit 2) and mathematical precondition
/// failures (exit 3 with no result to report) are thrown as JobError and
/// MathError instead.
struct JobResult {
  std::string report_json;   // deterministic serialization, "timing" last
  std::string report_table;  // line-oriented rendering of the same report
  int exit_code = 0;
  std::string error_code;
  std::string error_message;
};

/// Parse and execute one declarative job. The input grammar is
/// schemas/jobspec.schema.json and the output shape
/// schemas/report.schema.json; both are documented in the top-level README.
JobResult run_job(const std::string& job_text, const JobOptions& options = {});

}  // namespace tanaka

#endif
