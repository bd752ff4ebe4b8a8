#include "jacobi/report.hpp"

#include <array>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "jacobi/io.hpp"

namespace jacobi {
namespace {

constexpr std::array<const char*, 10> kColumns = {"trial", "seed",   "n",     "algo",     "digits",
                                                  "error", "failure", "sweeps", "products", "sqrts"};

std::vector<std::string> fields_of(const TrialRecord& r) {
  return {std::to_string(r.trial), std::to_string(r.seed),   std::to_string(r.n),
          r.algo,                  std::to_string(r.digits), format_double(r.error),
          r.failure ? "1" : "0",   std::to_string(r.sweeps), std::to_string(r.products),
          std::to_string(r.sqrts)};
}

template <typename T>
T parse_unsigned(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size() || s[0] == '-') {
    throw Error(ErrorCode::ParseError, "bad integer field '" + s + "'");
  }
  return static_cast<T>(v);
}

TrialRecord record_of(const std::vector<std::string>& f) {
  if (f.size() != kColumns.size()) {
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(kColumns.size()) +
                                           " fields, got " + std::to_string(f.size()));
  }
  TrialRecord r;
  r.trial = parse_unsigned<std::size_t>(f[0]);
  r.seed = parse_unsigned<std::uint64_t>(f[1]);
  r.n = parse_unsigned<std::size_t>(f[2]);
  r.algo = f[3];
  r.digits = parse_unsigned<int>(f[4]);
  char* end = nullptr;
  r.error = std::strtod(f[5].c_str(), &end);
  if (end == f[5].c_str() || *end != '\0') {
    throw Error(ErrorCode::ParseError, "bad error field '" + f[5] + "'");
  }
  if (f[6] != "0" && f[6] != "1") throw Error(ErrorCode::ParseError, "failure must be 0 or 1");
  r.failure = f[6] == "1";
  r.sweeps = parse_unsigned<std::size_t>(f[7]);
  r.products = parse_unsigned<std::uint64_t>(f[8]);
  r.sqrts = parse_unsigned<std::uint64_t>(f[9]);
  return r;
}

bool skippable(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

void check_header(const std::vector<std::string>& f) {
  bool ok = f.size() == kColumns.size();
  for (std::size_t i = 0; ok && i < f.size(); ++i) ok = f[i] == kColumns[i];
  if (!ok) throw Error(ErrorCode::ParseError, "unexpected report header");
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    out.push_back(field);
  }
  return out;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string field;
  while (ss >> field) out.push_back(field);
  return out;
}

template <typename Split>
ExperimentReport read_records(std::istream& in, Split split) {
  ExperimentReport report;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    const std::vector<std::string> f = split(line);
    if (!header) {
      check_header(f);
      header = true;
      continue;
    }
    report.records.push_back(record_of(f));
  }
  if (!header) throw Error(ErrorCode::ParseError, "missing report header");
  return report;
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
  if (name == "table") return ReportFormat::table;
  if (name == "csv") return ReportFormat::csv;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + name + "'");
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
  for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
  out << '\n';
  for (const TrialRecord& r : report.records) {
    const std::vector<std::string> f = fields_of(r);
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << f[i];
    out << '\n';
  }
}

void write_table(std::ostream& out, const ExperimentReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.emplace_back(kColumns.begin(), kColumns.end());
  for (const TrialRecord& r : report.records) rows.push_back(fields_of(r));
  std::vector<std::size_t> width(kColumns.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += std::string(width[i] - row[i].size(), ' ') + row[i];
    }
    out << line << '\n';
  }
  if (report.records.empty()) return;
  out << "#\n# algo  runs  failures  min  median  p90  max\n";
  for (const AlgoSummary& s : summarize(report)) {
    out << "# " << s.algo << "  " << s.runs << "  " << s.failures << "  " << format_double(s.min)
        << "  " << format_double(s.median) << "  " << format_double(s.p90) << "  "
        << format_double(s.max) << '\n';
  }
}

void write_report(std::ostream& out, const ExperimentReport& report, ReportFormat format) {
  if (format == ReportFormat::csv) {
    write_csv(out, report);
  } else {
    write_table(out, report);
  }
}

ExperimentReport read_csv(std::istream& in) { return read_records(in, split_csv); }

ExperimentReport read_table(std::istream& in) { return read_records(in, split_ws); }

}  // namespace jacobi
