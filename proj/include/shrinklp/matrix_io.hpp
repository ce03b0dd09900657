// shrinklp: linear-shrinkage estimation for noisily observed LP constraint matrices.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "shrinklp/matrix.hpp"

namespace shrinklp {

/// Shortest decimal string that round-trips the exact double value.
/// Locale-independent; this is the one formatter used for every numeric
/// output so reruns are byte-identical.
std::string format_double(double value);

/// Matrix CSV: one row per line, comma separated, no header, LF endings.
/// Dimensions are inferred on read.
void write_matrix_csv(const DenseMatrix& m, const std::string& path);
DenseMatrix read_matrix_csv(const std::string& path);

/// Vectors are stored as single-column matrices.
void write_vector_csv(const std::vector<double>& v, const std::string& path);
std::vector<double> read_vector_csv(const std::string& path);

}  // namespace shrinklp
