#pragma once

// Executing a RunConfig and writing its report rows as CSV or JSON.

#include <optional>
#include <string>
#include <vector>

#include "hardylab/config.hpp"

namespace hardylab {

/// Flat record shared by every command. Absent fields print empty (CSV) or
/// null (JSON). `test` and `notes` go to the metadata sidecar only.
struct ReportRow {
  std::string theorem;
  std::string case_id;
  std::string weight;
  int N = 0;
  std::optional<double> p;
  std::optional<double> alpha;
  std::optional<double> s;
  std::optional<double> q;
  std::optional<double> value;
  std::optional<double> bound;
  std::optional<double> margin;
  std::optional<bool> holds;
  std::string scheme;
  std::optional<double> est_error;
  std::string test;
  std::vector<std::string> notes;
};

inline constexpr const char* kReportHeader =
    "theorem,case,weight,N,p,alpha,s,q,value,bound,margin,holds,scheme,est_error";

struct Report {
  Command command = Command::Constant;
  std::vector<ReportRow> rows;
  std::string metadata;  ///< JSON document for the sidecar

  /// 0 when every row with a verdict holds, 2 otherwise.
  int exit_status() const;
};

struct RunOptions {
  double bound_scale = 1.0;  ///< test hook: multiplies every asserted bound
};

Report run(const RunConfig& config, const RunOptions& options = {});

/// CSV (header plus one line per row) or a JSON array of row objects.
std::string format_rows(const std::vector<ReportRow>& rows, const std::string& format);

/// Writes the rows to `path` (stdout when empty). With a path, the metadata
/// goes to `<path>.meta.json`.
void emit_report(const Report& report, const std::string& format, const std::string& path);

}  // namespace hardylab
