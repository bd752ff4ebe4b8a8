#include "jacobi/io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace jacobi {
namespace {

std::vector<std::string> content_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

std::vector<double> parse_numbers(const std::string& line, std::size_t expected, const char* what) {
  std::istringstream ss(line);
  std::vector<double> out;
  std::string token;
  while (ss >> token) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
      throw Error(ErrorCode::ParseError, std::string("bad number '") + token + "' in " + what);
    }
    out.push_back(v);
  }
  if (out.size() != expected) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": expected " + std::to_string(expected) +
                                           " numbers, got " + std::to_string(out.size()));
  }
  return out;
}

struct Record {
  std::size_t n;
  std::vector<double> first;
  std::vector<double> second;
};

Record read_record(std::istream& in, std::size_t second_len_offset, const char* first_name,
                   const char* second_name) {
  const std::vector<std::string> lines = content_lines(in);
  if (lines.empty()) throw Error(ErrorCode::ParseError, "empty input");
  std::size_t n = 0;
  {
    const std::string& s = lines[0];
    const auto first = s.find_first_not_of(" \t");
    const auto last = s.find_last_not_of(" \t\r");
    const char* b = s.data() + first;
    const char* e = s.data() + last + 1;
    auto [ptr, ec] = std::from_chars(b, e, n);
    if (ec != std::errc() || ptr != e || n == 0) {
      throw Error(ErrorCode::ParseError, "first line must be a positive integer n");
    }
  }
  const std::size_t second_len = n - second_len_offset;
  // a blank second line (n = 1 matrices) has already been dropped
  const std::size_t expected_lines = second_len == 0 ? 2 : 3;
  if (lines.size() != expected_lines && !(second_len == 0 && lines.size() == 3)) {
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(expected_lines) +
                                           " non-comment lines, got " + std::to_string(lines.size()));
  }
  Record r{n, parse_numbers(lines[1], n, first_name), {}};
  if (lines.size() == 3) r.second = parse_numbers(lines[2], second_len, second_name);
  return r;
}

void write_row(std::ostream& out, std::span<const double> xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out << ' ';
    out << format_double(xs[i]);
  }
  out << '\n';
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

TridiagonalMatrix read_matrix(std::istream& in) {
  Record r = read_record(in, 1, "diagonal", "off-diagonal");
  return {std::move(r.first), std::move(r.second)};
}

void write_matrix(std::ostream& out, const TridiagonalMatrix& t) {
  out << t.size() << '\n';
  write_row(out, t.diagonal());
  write_row(out, t.off_diagonal());
}

SpectralData read_spectral(std::istream& in) {
  Record r = read_record(in, 0, "eigenvalues", "norming constants");
  return SpectralData(std::move(r.first), std::move(r.second));
}

void write_spectral(std::ostream& out, const SpectralData& d) {
  out << d.size() << '\n';
  write_row(out, d.lambda);
  write_row(out, d.w);
}

}  // namespace jacobi
