#pragma once

// ExperimentReport serialization. Both formats carry the columns
//   trial seed n algo digits error failure sweeps products sqrts
// CSV is comma separated with a header row. The table is whitespace aligned
// and followed by '#'-prefixed per-algorithm summary lines, which the parser
// skips (summaries are recomputed from the records).

#include <iosfwd>

#include "jacobi/harness.hpp"

namespace jacobi {

enum class ReportFormat { table, csv };

ReportFormat parse_report_format(const std::string& name);

void write_csv(std::ostream& out, const ExperimentReport& report);
void write_table(std::ostream& out, const ExperimentReport& report);
void write_report(std::ostream& out, const ExperimentReport& report, ReportFormat format);

ExperimentReport read_csv(std::istream& in);
ExperimentReport read_table(std::istream& in);

}  // namespace jacobi
