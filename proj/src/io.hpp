#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "blaschke.hpp"
#include "matrix.hpp"

namespace ratlas {

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`, with optional exponents.
/// Throws ErrorCode::parse on malformed or non-finite input.
Complex parse_complex(std::string_view text);

/// Comma-separated complex literals.
std::vector<Complex> parse_complex_list(std::string_view text);

Spectrum parse_spectrum(std::string_view text);

/// {"rows": r, "cols": c, "entries": [[re, im], ...]} row-major. Plain numbers
/// are accepted as real entries.
ComplexMatrix parse_matrix_json(std::string_view text);

/// Rows of comma-separated reals; blank lines and lines starting with '#' are skipped.
ComplexMatrix parse_matrix_csv(std::string_view text);

/// Reads a file; CSV when the name ends in .csv, JSON otherwise.
ComplexMatrix load_matrix_file(const std::string& path);

std::string matrix_to_json(const ComplexMatrix& m);

/// Grid syntax: circle:R:N, segment:Z1:Z2:N (endpoints included), list:Z1,Z2,...
std::vector<Complex> parse_grid(std::string_view text);

/// Shortest round-trip decimal for a double.
std::string format_double(double x);

}  // namespace ratlas
