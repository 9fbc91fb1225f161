#pragma once

#include <string>
#include <vector>

#include "fsp/matrix.hpp"

// Plain-text table I/O. All numeric output goes through format_double so
// every emitted file is byte-stable across reruns; files use LF line endings
// and '.' decimal points regardless of locale.

namespace fsp {

/// Shortest round-trippable-enough representation: %.12g.
std::string format_double(double x);

/// Write header + rows; every row must match the header width.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

enum class HeaderMode { Auto, Yes, No };

/// Read a rectangular numeric CSV into a matrix. Auto header detection treats
/// a first line with any non-numeric cell as a header. Parse failures name
/// the 1-based row (header included) and column.
Matrixd read_numeric_csv(const std::string& path, HeaderMode mode = HeaderMode::Auto);

}  // namespace fsp
