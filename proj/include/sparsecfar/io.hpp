#pragma once

#include <iosfwd>
#include <string>

#include "sparsecfar/types.hpp"

namespace sparsecfar {

/// Shortest decimal form that round-trips a double (up to 17 significant digits).
std::string format_real(double value);

/// Writes a dense matrix in Matrix Market array format (column-major values).
void write_matrix_market(std::ostream& out, const Matrix& a);
void write_matrix_market_file(const std::string& path, const Matrix& a);

/// Reads a dense matrix in Matrix Market array format. Coordinate, complex and
/// pattern files are rejected.
Matrix read_matrix_market(std::istream& in);
Matrix read_matrix_market_file(const std::string& path);

/// Writes a vector as single-column CSV with a one-line header.
void write_vector_csv(std::ostream& out, const std::string& header, const Vector& v);
void write_vector_csv_file(const std::string& path, const std::string& header,
                           const Vector& v);

/// Reads a single-column CSV vector. When expected_header is non-empty the
/// file's header must match it.
Vector read_vector_csv(std::istream& in, const std::string& expected_header = "");
Vector read_vector_csv_file(const std::string& path,
                            const std::string& expected_header = "");

}  // namespace sparsecfar
