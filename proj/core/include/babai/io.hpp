#pragma once

// Shared text formats. Matrices: one row per line, whitespace-separated
// decimal literals, dimensions inferred. Vectors: a single line of values.
// Permutations: a single line of zero-based indices.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "babai/matrix.hpp"

namespace babai {

DenseMatrix read_matrix(std::istream& in);
DenseMatrix read_matrix_file(const std::filesystem::path& path);

void write_matrix(std::ostream& out, const DenseMatrix& m);
void write_matrix(std::ostream& out, const UpperTriangular& r);
void write_matrix_file(const std::filesystem::path& path, const DenseMatrix& m);
void write_matrix_file(const std::filesystem::path& path, const UpperTriangular& r);
void write_int_matrix_file(const std::filesystem::path& path, const IntMatrix& m);

std::vector<double> read_vector(std::istream& in);
std::vector<double> read_vector_file(const std::filesystem::path& path);
std::vector<long long> read_int_vector_file(const std::filesystem::path& path);

void write_vector(std::ostream& out, std::span<const double> v);
void write_int_vector(std::ostream& out, std::span<const long long> v);
void write_index_vector_file(const std::filesystem::path& path, std::span<const std::size_t> v);

/// Interprets a parsed dense square matrix as UpperTriangular when the
/// below-diagonal entries are exactly zero and the diagonal is positive.
std::optional<UpperTriangular> try_upper_triangular(const DenseMatrix& m);

/// Full-precision round-trippable rendering of a double ("%.17g").
std::string format_full(double v);
/// Six-significant-digit rendering used by the CSV reports ("%.6g").
std::string format_csv(double v);

}  // namespace babai
