#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "covsel/sym_matrix.hpp"

namespace covsel::io {

/// Reads either the dense text format (first line n, then n rows of n
/// values) or a coordinate MatrixMarket file (real/integer/pattern,
/// general or symmetric). Errors name the file and line.
SymMatrix read_matrix(const std::filesystem::path& path);

SymMatrix parse_dense(std::istream& in, const std::string& name);
SymMatrix parse_matrix_market(std::istream& in, const std::string& name);

/// Dense text format with shortest round-trip decimal values.
void write_dense(const std::filesystem::path& path, const SymMatrix& m);
std::string format_dense(const SymMatrix& m);

/// Coordinate MatrixMarket, symmetric, lower triangle of the entries with
/// |mᵢⱼ| > drop_below.
void write_matrix_market(const std::filesystem::path& path, const SymMatrix& m,
                         double drop_below = 0.0);

/// Symmetric pattern file listing the given lower-triangle pairs (0-based in,
/// 1-based on disk), plus the diagonal.
void write_pattern(const std::filesystem::path& path, std::size_t n,
                   const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

std::string format_double(double v);

}  // namespace covsel::io
