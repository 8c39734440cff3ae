#include "covsel/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "covsel/errors.hpp"

namespace covsel::io {

namespace {

[[noreturn]] void fail(const std::string& name, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << name << ":" << line << ": " << what;
  throw ParseError(msg.str());
}

double parse_number(const std::string& tok, const std::string& name, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) fail(name, line, "not a number: '" + tok + "'");
  return v;
}

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

SymMatrix finish(const Eigen::MatrixXd& m, const std::string& name) {
  try {
    return SymMatrix(m);
  } catch (const Error& e) {
    throw ParseError(name + ": " + e.what());
  }
}

}  // namespace

SymMatrix parse_dense(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) fail(name, lineno, "empty file");
  std::istringstream header(line);
  long long n = 0;
  std::string extra;
  if (!(header >> n) || (header >> extra) || n <= 0) {
    fail(name, lineno, "expected a positive dimension on the first line");
  }
  const auto k = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!next_content_line(in, line, lineno)) {
      fail(name, lineno, "expected " + std::to_string(n) + " rows, found " + std::to_string(i));
    }
    std::istringstream row(line);
    std::string tok;
    Eigen::Index j = 0;
    while (row >> tok) {
      if (j >= k) fail(name, lineno, "too many values in row");
      m(i, j++) = parse_number(tok, name, lineno);
    }
    if (j != k) {
      fail(name, lineno, "expected " + std::to_string(n) + " values, found " + std::to_string(j));
    }
  }
  if (next_content_line(in, line, lineno)) fail(name, lineno, "trailing content after matrix");
  return finish(m, name);
}

SymMatrix parse_matrix_market(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) fail(name, 1, "empty file");
  ++lineno;
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || object != "matrix" || format != "coordinate") {
    fail(name, lineno, "only coordinate MatrixMarket matrices are supported");
  }
  const bool pattern = field == "pattern";
  if (!pattern && field != "real" && field != "integer" && field != "double") {
    fail(name, lineno, "unsupported MatrixMarket field '" + field + "'");
  }
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") {
    fail(name, lineno, "unsupported MatrixMarket symmetry '" + symmetry + "'");
  }
  do {
    if (!std::getline(in, line)) fail(name, lineno, "missing size line");
    ++lineno;
  } while (line.empty() || line[0] == '%');
  std::istringstream size(line);
  long long rows = 0, cols = 0, nnz = 0;
  if (!(size >> rows >> cols >> nnz) || rows <= 0 || rows != cols || nnz < 0) {
    fail(name, lineno, "expected 'n n nnz' with a square positive size");
  }
  const auto k = static_cast<Eigen::Index>(rows);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
  for (long long e = 0; e < nnz; ++e) {
    if (!next_content_line(in, line, lineno)) fail(name, lineno, "fewer entries than declared");
    std::istringstream entry(line);
    long long i = 0, j = 0;
    std::string tok;
    if (!(entry >> i >> j)) fail(name, lineno, "expected row and column indices");
    if (i < 1 || j < 1 || i > rows || j > cols) fail(name, lineno, "index out of range");
    double v = 1.0;
    if (!pattern) {
      if (!(entry >> tok)) fail(name, lineno, "missing value");
      v = parse_number(tok, name, lineno);
    }
    m(i - 1, j - 1) = v;
    if (symmetric) m(j - 1, i - 1) = v;
  }
  return finish(m, name);
}

SymMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  const std::string name = path.string();
  if (!in) fail(name, 0, "cannot open file");
  if (in.peek() == '%') return parse_matrix_market(in, name);
  return parse_dense(in, name);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_dense(const SymMatrix& m) {
  std::string out = std::to_string(m.n()) + "\n";
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (std::size_t j = 0; j < m.n(); ++j) {
      if (j > 0) out += ' ';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

void write_dense(const std::filesystem::path& path, const SymMatrix& m) {
  write_text(path, format_dense(m));
}

void write_matrix_market(const std::filesystem::path& path, const SymMatrix& m,
                         double drop_below) {
  std::string body;
  std::size_t nnz = 0;
  for (std::size_t j = 0; j < m.n(); ++j) {
    for (std::size_t i = j; i < m.n(); ++i) {
      if (std::abs(m(i, j)) > drop_below || (drop_below == 0.0 && i == j)) {
        body += std::to_string(i + 1) + " " + std::to_string(j + 1) + " " +
                format_double(m(i, j)) + "\n";
        ++nnz;
      }
    }
  }
  write_text(path, "%%MatrixMarket matrix coordinate real symmetric\n" +
                       std::to_string(m.n()) + " " + std::to_string(m.n()) + " " +
                       std::to_string(nnz) + "\n" + body);
}

void write_pattern(const std::filesystem::path& path, std::size_t n,
                   const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::string body;
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < n; ++i) {
    body += std::to_string(i + 1) + " " + std::to_string(i + 1) + "\n";
    ++nnz;
  }
  for (const auto& [i, j] : pairs) {
    if (i <= j) continue;
    body += std::to_string(i + 1) + " " + std::to_string(j + 1) + "\n";
    ++nnz;
  }
  write_text(path, "%%MatrixMarket matrix coordinate pattern symmetric\n" +
                       std::to_string(n) + " " + std::to_string(n) + " " +
                       std::to_string(nnz) + "\n" + body);
}

}  // namespace covsel::io
