#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kronspin/errors.hpp"
#include "kronspin/io.hpp"

namespace kronspin {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos >= line.size()) break;
    const std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    tokens.push_back({line.substr(start, pos - start), start + 1});
  }
  return tokens;
}

[[noreturn]] void fail(const std::string& msg, std::size_t line, std::size_t column) {
  throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                       msg,
                   line, column);
}

bool parse_double(std::string_view s, std::size_t& consumed, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') return false;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{}) return false;
  consumed = static_cast<std::size_t>(ptr - first);
  return std::isfinite(out);
}

Complex parse_entry(const Token& tok, std::size_t line) {
  std::string_view s = tok.text;
  double re = 0.0;
  std::size_t used = 0;
  if (!parse_double(s, used, re)) fail("invalid entry '" + std::string(s) + "'", line, tok.column);
  if (used == s.size()) return {re, 0.0};
  if (s[used] == 'i' && used + 1 == s.size()) return {0.0, re};

  const char sign = s[used];
  if (sign != '+' && sign != '-') {
    fail("invalid entry '" + std::string(s) + "'", line, tok.column);
  }
  std::string_view rest = s.substr(sign == '+' ? used + 1 : used);
  double im = 0.0;
  std::size_t used_im = 0;
  if (!parse_double(rest, used_im, im) || used_im + 1 != rest.size() || rest[used_im] != 'i') {
    fail("invalid imaginary part in '" + std::string(s) + "'", line, tok.column);
  }
  return {re, im};
}

std::size_t parse_dimension(const Token& tok, std::size_t line) {
  std::size_t value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value == 0) {
    fail("expected a positive integer dimension, got '" + std::string(tok.text) + "'", line,
         tok.column);
  }
  return value;
}

void append_double(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ComplexMatrix parse_matrix(std::string_view text) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool have_header = false;
  std::size_t row = 0;
  std::vector<Complex> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = end + 1;

    const auto tokens = split_tokens(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (!have_header) {
      if (tokens.size() != 2) fail("header must be 'rows cols'", line_no, tokens.front().column);
      rows = parse_dimension(tokens[0], line_no);
      cols = parse_dimension(tokens[1], line_no);
      if (rows > (std::size_t{1} << 26) / cols) fail("matrix too large", line_no, 1);
      entries.reserve(rows * cols);
      have_header = true;
    } else {
      if (row == rows) fail("more rows than declared", line_no, tokens.front().column);
      if (tokens.size() != cols) {
        fail("expected " + std::to_string(cols) + " entries, found " +
                 std::to_string(tokens.size()),
             line_no, tokens.size() > cols ? tokens[cols].column : line.size() + 1);
      }
      for (const Token& tok : tokens) entries.push_back(parse_entry(tok, line_no));
      ++row;
    }
    if (end == text.size()) break;
  }
  if (!have_header) fail("missing 'rows cols' header", line_no == 0 ? 1 : line_no, 1);
  if (row != rows) {
    fail("expected " + std::to_string(rows) + " rows, found " + std::to_string(row), line_no, 1);
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

ComplexMatrix read_matrix_file(const std::string& path) {
  try {
    return parse_matrix(slurp(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

std::string format_entry(Complex z) {
  std::string out;
  append_double(out, z.real());
  if (z.imag() == 0.0 && !std::signbit(z.imag())) return out;
  out.push_back(std::signbit(z.imag()) ? '-' : '+');
  append_double(out, std::abs(z.imag()));
  out.push_back('i');
  return out;
}

std::string format_matrix(const ComplexMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out.push_back(' ');
      out += format_entry(m(r, c));
    }
    out.push_back('\n');
  }
  return out;
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << format_matrix(m);
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace kronspin
