#pragma once

// Text formats. Lines starting with '#' are comments.
//
// Matrix file:            Spectral file:
//   n                       n
//   a_1 ... a_n             lambda_1 ... lambda_n   (ascending)
//   b_1 ... b_{n-1}         w_1 ... w_n
//
// The off-diagonal line is empty for n = 1. Numbers are written with 17
// significant digits.

#include <iosfwd>
#include <string>

#include "jacobi/core.hpp"

namespace jacobi {

/// %.17g
std::string format_double(double x);

TridiagonalMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const TridiagonalMatrix& t);

/// Parses only; pass the result through validate_spectral before use.
SpectralData read_spectral(std::istream& in);
void write_spectral(std::ostream& out, const SpectralData& d);

}  // namespace jacobi
