#pragma once

#include <string>
#include <vector>

#include "fsp/matrix.hpp"

namespace fsp {

/// Write a heatmap of gap values: one row per per_factor value, one column
/// per loading value. Diverging color scale centered at zero (blue negative,
/// red positive), with a legend bar. values(i, j) belongs to
/// per_factor_values[i] x l_values[j].
void write_gap_heatmap_svg(const std::string& path, const std::string& title,
                           const std::vector<double>& l_values,
                           const std::vector<int>& per_factor_values,
                           const Matrixd& values);

}  // namespace fsp
