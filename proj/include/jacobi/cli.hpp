#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jacobi {

/// Exit statuses of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitBreakdown = 2;

/// Runs the command line tool on `args` (program name excluded).
///   forward <matrix-file>
///   reconstruct --algo {bg|bi|bg2|bi2|qr} [--digits d] <spectral-file>
///   tighten <spectral-file>
///   bench --experiment {random|laplacian|permutations} --n N --trials T
///         --digits D [--sigma S] --seed K [--format {table|csv}]
/// A file argument of "-" reads standard input.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace jacobi
