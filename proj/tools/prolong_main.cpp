#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tanaka/errors.hpp"
#include "tanaka/jobs.hpp"

namespace {

/// One structured line on the error stream for every nonzero exit, so
/// callers can key on a code without scraping the message.
void report_error(const std::string& code, const std::string& message) {
  nlohmann::ordered_json e;
  e["error"]["code"] = code;
  e["error"]["message"] = message;
  std::cerr << e.dump() << "\n";
}

int write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    report_error("OutputUnwritable", "cannot write to " + path);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Tanaka prolongation jobs: run one JSON job file and "
               "print its report"};
  std::string job_path;
  std::string format = "json";
  std::string output;
  tanaka::JobOptions options;
  app.add_option("job", job_path, "Path to the JSON job file")->required();
  app.add_option("--format", format, "Report rendering")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_option("--output", output, "Write the report to a file instead of stdout");
  app.add_flag("--emit-bases", options.emit_bases,
               "Include component bases in the report");
  app.add_flag("--emit-brackets", options.emit_brackets,
               "Include nonzero structure constants in the report");
  app.add_flag("--require-finite", options.require_finite,
               "Fail (exit 4) if the prolongation is still growing at the cap");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("UsageError", e.what());
    return 2;
  }

  std::ifstream in(job_path, std::ios::binary);
  if (!in) {
    report_error("JobFileUnreadable", "cannot read " + job_path);
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  try {
    tanaka::JobResult result = tanaka::run_job(buffer.str(), options);
    const std::string& text =
        format == "table" ? result.report_table : result.report_json;
    if (int rc = write_output(text, output); rc != 0) return rc;
    if (result.exit_code != 0) report_error(result.error_code, result.error_message);
    return result.exit_code;
  } catch (const tanaka::JobError& e) {
    report_error("JobError", e.what());
    return 2;
  } catch (const tanaka::MathError& e) {
    report_error(e.code, e.what());
    return 3;
  } catch (const std::exception& e) {
    report_error("Internal", e.what());
    return 1;
  }
}
