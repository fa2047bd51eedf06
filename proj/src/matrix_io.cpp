#include "ftk/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "ftk/errors.hpp"

namespace ftk {

namespace {

using nlohmann::ordered_json;

std::string_view trimmed(std::string_view sv) {
  while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front()))) sv.remove_prefix(1);
  while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back()))) sv.remove_suffix(1);
  return sv;
}

// Entry grammar: a sum of at most one real and one imaginary term, in either
// order, e.g. "2", "-3.5e-2", "2+3i", "-i", "0.5i-1". from_chars keeps the
// parse locale independent.
Complex parse_entry(std::string_view sv, Index row, Index col) {
  sv = trimmed(sv);
  auto bad = [&](const char* why) -> ParseError {
    std::ostringstream os;
    os << "entry (" << row << "," << col << "): " << why;
    return ParseError(os.str());
  };
  if (sv.empty()) throw bad("empty");

  double re = 0.0;
  double im = 0.0;
  bool have_re = false;
  bool have_im = false;
  const char* p = sv.data();
  const char* end = sv.data() + sv.size();
  while (p < end) {
    double sign = 1.0;
    if (*p == '+') {
      ++p;
    } else if (*p == '-') {
      sign = -1.0;
      ++p;
    }
    double mag = 1.0;
    auto [next, ec] = std::from_chars(p, end, mag);
    const bool have_digits = ec == std::errc();
    if (have_digits) p = next;
    if (p < end && (*p == 'i' || *p == 'I' || *p == 'j')) {
      ++p;
      if (have_im) throw bad("two imaginary terms");
      im = sign * mag;
      have_im = true;
    } else {
      if (!have_digits) throw bad("unreadable number");
      if (have_re) throw bad("two real terms");
      re = sign * mag;
      have_re = true;
    }
  }
  if (!std::isfinite(re) || !std::isfinite(im)) throw bad("not finite");
  return Complex(re, im);
}

ComplexMatrix parse_csv(const std::string& text) {
  std::vector<std::vector<Complex>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (trimmed(line).empty()) continue;
    std::vector<Complex> row;
    std::string_view rest = line;
    const Index r = static_cast<Index>(rows.size());
    while (true) {
      const std::size_t comma = rest.find(',');
      const std::string_view cell = rest.substr(0, comma);
      row.push_back(parse_entry(cell, r, static_cast<Index>(row.size())));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("ragged rows: line " + std::to_string(rows.size() + 1));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data");
  ComplexMatrix m(rows.size(), rows.front().size());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

ComplexMatrix parse_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
  try {
    const auto rows = j.at("rows").get<std::int64_t>();
    const auto cols = j.at("cols").get<std::int64_t>();
    if (rows < 1 || cols < 1) throw ParseError("rows and cols must be positive");
    const auto& data = j.at("data");
    if (!data.is_array() || data.size() != static_cast<std::size_t>(rows * cols))
      throw ParseError("data must hold rows*cols entries");
    ComplexMatrix m(rows, cols);
    for (std::int64_t k = 0; k < rows * cols; ++k) {
      const auto& cell = data[static_cast<std::size_t>(k)];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
        throw ParseError("data entry " + std::to_string(k) + " must be [re,im]");
      const double re = cell[0].get<double>();
      const double im = cell[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im))
        throw ParseError("data entry " + std::to_string(k) + " not finite");
      m(k / cols, k % cols) = Complex(re, im);
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

} // namespace

ComplexMatrix parse_matrix(const std::string& text) {
  const std::string_view body = trimmed(text);
  if (body.empty()) throw ParseError("empty input");
  return body.front() == '{' ? parse_json(text) : parse_csv(text);
}

ComplexMatrix read_matrix(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  return parse_matrix(text);
}

std::string matrix_to_json(const ComplexMatrix& m) {
  ordered_json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  ordered_json data = ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k)
      data.push_back(ordered_json::array({m(i, k).real(), m(i, k).imag()}));
  j["data"] = std::move(data);
  return j.dump() + "\n";
}

std::string matrix_to_csv(const ComplexMatrix& m) {
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) {
      if (k > 0) out += ',';
      const double re = m(i, k).real();
      const double im = m(i, k).imag();
      out += format_double(re);
      if (im != 0.0) {
        if (!std::signbit(im)) out += '+';
        out += format_double(im);
        out += 'i';
      }
    }
    out += '\n';
  }
  return out;
}

void write_matrix(const std::string& path, const ComplexMatrix& m) {
  const std::string text = matrix_to_json(m);
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path);
  out << text;
}

std::string matrix_digest(const ComplexMatrix& m) {
  const std::string text = matrix_to_json(m);
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace ftk
