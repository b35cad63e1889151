#include "babai/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace babai {

namespace {

std::vector<std::vector<double>> read_rows(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<double> row;
    std::string token;
    while (ls >> token) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": bad number '" + token + "'");
      }
      if (used != token.size()) {
        throw ParseError("line " + std::to_string(lineno) + ": bad number '" + token + "'");
      }
      row.push_back(v);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_csv(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

DenseMatrix read_matrix(std::istream& in) {
  auto rows = read_rows(in);
  if (rows.empty()) throw ParseError("empty matrix");
  const std::size_t cols = rows.front().size();
  std::vector<double> entries;
  entries.reserve(rows.size() * cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                       " entries, expected " + std::to_string(cols));
    }
    entries.insert(entries.end(), rows[i].begin(), rows[i].end());
  }
  return DenseMatrix(rows.size(), cols, std::move(entries));
}

DenseMatrix read_matrix_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return read_matrix(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_matrix(std::ostream& out, const DenseMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_full(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix(std::ostream& out, const UpperTriangular& r) { write_matrix(out, r.to_dense()); }

void write_matrix_file(const std::filesystem::path& path, const DenseMatrix& m) {
  auto out = open_output(path);
  write_matrix(out, m);
}

void write_matrix_file(const std::filesystem::path& path, const UpperTriangular& r) {
  auto out = open_output(path);
  write_matrix(out, r);
}

void write_int_matrix_file(const std::filesystem::path& path, const IntMatrix& m) {
  auto out = open_output(path);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (j) out << ' ';
      out << m(i, j);
    }
    out << '\n';
  }
}

std::vector<double> read_vector(std::istream& in) {
  auto rows = read_rows(in);
  if (rows.empty()) throw ParseError("empty vector");
  if (rows.size() != 1) throw ParseError("expected a single-line vector");
  return rows.front();
}

std::vector<double> read_vector_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return read_vector(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<long long> read_int_vector_file(const std::filesystem::path& path) {
  auto values = read_vector_file(path);
  std::vector<long long> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto rounded = static_cast<long long>(values[i]);
    if (static_cast<double>(rounded) != values[i]) {
      throw ParseError(path.string() + ": entry " + std::to_string(i) + " is not an integer");
    }
    out[i] = rounded;
  }
  return out;
}

void write_vector(std::ostream& out, std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << format_full(v[i]);
  }
  out << '\n';
}

void write_int_vector(std::ostream& out, std::span<const long long> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << v[i];
  }
  out << '\n';
}

void write_index_vector_file(const std::filesystem::path& path, std::span<const std::size_t> v) {
  auto out = open_output(path);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << v[i];
  }
  out << '\n';
}

std::optional<UpperTriangular> try_upper_triangular(const DenseMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(m(i, i) > 0.0)) return std::nullopt;
    for (std::size_t j = 0; j < i; ++j) {
      if (m(i, j) != 0.0) return std::nullopt;
    }
  }
  return UpperTriangular(n, std::vector<double>(m.entries().begin(), m.entries().end()));
}

}  // namespace babai
