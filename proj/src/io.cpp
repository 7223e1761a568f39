#include "sparsecfar/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sparsecfar {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file for reading: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open file for writing: " + path);
  return out;
}

double parse_real(const std::string& token, const std::string& context) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    if (pos != token.size()) throw InputError("");
    return v;
  } catch (const std::exception&) {
    throw InputError(context + ": cannot parse value '" + token + "'");
  }
}

}  // namespace

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_matrix_market(std::ostream& out, const Matrix& a) {
  out << "%%MatrixMarket matrix array real general\n";
  out << a.rows() << " " << a.cols() << "\n";
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out << format_real(a(i, j)) << "\n";
    }
  }
}

void write_matrix_market_file(const std::string& path, const Matrix& a) {
  auto out = open_output(path);
  write_matrix_market(out, a);
}

Matrix read_matrix_market(std::istream& in) {
  std::string banner;
  if (!std::getline(in, banner)) throw InputError("matrix market: empty stream");
  std::istringstream hs(strip_cr(banner));
  std::string tag, object, fmt, field, symmetry;
  hs >> tag >> object >> fmt >> field >> symmetry;
  if (lower(tag) != "%%matrixmarket" || lower(object) != "matrix") {
    throw InputError("matrix market: missing %%MatrixMarket banner");
  }
  if (lower(fmt) != "array") {
    throw InputError("matrix market: only array format is supported, got '" + fmt + "'");
  }
  if (lower(field) != "real") {
    throw InputError("matrix market: only real field is supported, got '" + field + "'");
  }
  if (lower(symmetry) != "general") {
    throw InputError("matrix market: only general symmetry is supported, got '" +
                     symmetry + "'");
  }

  std::string line;
  Index rows = 0, cols = 0;
  bool have_dims = false;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ds(line);
    if (!(ds >> rows >> cols)) throw InputError("matrix market: malformed size line");
    have_dims = true;
    break;
  }
  if (!have_dims) throw InputError("matrix market: missing size line");
  if (rows < 1 || cols < 1) throw InputError("matrix market: dimensions must be positive");

  Matrix a(rows, cols);
  Index count = 0;
  std::string token;
  while (count < rows * cols && in >> token) {
    if (token[0] == '%') {  // comment: discard the rest of the line
      std::getline(in, line);
      continue;
    }
    a(count % rows, count / rows) = parse_real(token, "matrix market");
    ++count;
  }
  if (count != rows * cols) {
    throw InputError("matrix market: expected " + std::to_string(rows * cols) +
                     " values, found " + std::to_string(count));
  }
  if (in >> token) throw InputError("matrix market: trailing data after values");
  return a;
}

Matrix read_matrix_market_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_matrix_market(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_vector_csv(std::ostream& out, const std::string& header, const Vector& v) {
  out << header << "\n";
  for (Index i = 0; i < v.size(); ++i) out << format_real(v[i]) << "\n";
}

void write_vector_csv_file(const std::string& path, const std::string& header,
                           const Vector& v) {
  auto out = open_output(path);
  write_vector_csv(out, header, v);
}

Vector read_vector_csv(std::istream& in, const std::string& expected_header) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("vector csv: empty stream");
  const std::string header = strip_cr(line);
  if (!expected_header.empty() && header != expected_header) {
    throw InputError("vector csv: expected header '" + expected_header + "', got '" +
                     header + "'");
  }
  std::vector<double> values;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    values.push_back(parse_real(line, "vector csv"));
  }
  Vector v(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Index>(i)] = values[i];
  return v;
}

Vector read_vector_csv_file(const std::string& path, const std::string& expected_header) {
  auto in = open_input(path);
  try {
    return read_vector_csv(in, expected_header);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace sparsecfar
