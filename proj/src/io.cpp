#include "io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "fixtures.hpp"

namespace ratlas {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(std::string_view what, std::string_view text) {
  fail(ErrorCode::parse, std::string(what) + ": '" + std::string(text) + "'");
}

double parse_real(std::string_view text) {
  const std::string_view t = trim(text);
  double value = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) parse_error("invalid number", text);
  if (!std::isfinite(value)) parse_error("non-finite number", text);
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::size_t parse_count(std::string_view text) {
  const std::string_view t = trim(text);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) parse_error("invalid count", text);
  return value;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) parse_error("empty complex literal", text);

  double re = 0.0, im = 0.0;
  bool have_re = false, have_im = false;
  std::size_t pos = 0;
  for (int term = 0; pos < s.size(); ++term) {
    if (term == 2) parse_error("too many terms in complex literal", text);
    double sign = 1.0;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    } else if (term == 1) {
      parse_error("missing sign between terms", text);
    }
    if (pos < s.size() && s[pos] == 'i') {
      if (have_im) parse_error("repeated imaginary part", text);
      im = sign;
      have_im = true;
      ++pos;
      continue;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), value);
    if (ec != std::errc() || ptr == s.data() + pos) parse_error("invalid complex literal", text);
    if (!std::isfinite(value)) parse_error("non-finite complex literal", text);
    pos = static_cast<std::size_t>(ptr - s.data());
    if (pos < s.size() && s[pos] == 'i') {
      if (have_im) parse_error("repeated imaginary part", text);
      im = sign * value;
      have_im = true;
      ++pos;
    } else {
      if (have_re || have_im) parse_error("real part must come first", text);
      re = sign * value;
      have_re = true;
    }
  }
  return {re, im};
}

std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  for (std::string_view part : split(text, ',')) out.push_back(parse_complex(part));
  return out;
}

Spectrum parse_spectrum(std::string_view text) { return Spectrum(parse_complex_list(text)); }

ComplexMatrix parse_matrix_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, std::string("malformed matrix JSON: ") + e.what());
  }
  try {
    const auto rows = doc.at("rows").get<std::size_t>();
    const auto cols = doc.at("cols").get<std::size_t>();
    const json& entries = doc.at("entries");
    if (rows == 0 || cols == 0) fail(ErrorCode::parse, "matrix dimensions must be positive");
    if (!entries.is_array() || entries.size() != rows * cols)
      fail(ErrorCode::parse, "entries must list rows*cols values");
    std::vector<Complex> values;
    values.reserve(entries.size());
    for (const json& e : entries) {
      if (e.is_number()) {
        values.emplace_back(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        values.emplace_back(e[0].get<double>(), e[1].get<double>());
      } else {
        fail(ErrorCode::parse, "each entry must be a number or [re, im]");
      }
    }
    return ComplexMatrix(rows, cols, std::move(values));
  } catch (const json::exception& e) {
    fail(ErrorCode::parse, std::string("matrix JSON: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse) throw;
    fail(ErrorCode::parse, std::string("matrix JSON: ") + e.what());
  }
}

ComplexMatrix parse_matrix_csv(std::string_view text) {
  std::vector<double> values;
  std::size_t rows = 0, cols = 0;
  for (std::string_view line : split(text, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split(line, ',');
    if (rows == 0) cols = cells.size();
    if (cells.size() != cols) fail(ErrorCode::parse, "CSV rows have differing lengths");
    for (std::string_view c : cells) values.push_back(parse_real(c));
    ++rows;
  }
  if (rows == 0) fail(ErrorCode::parse, "CSV matrix is empty");
  return ComplexMatrix::from_real(rows, cols, values);
}

ComplexMatrix load_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::parse, "cannot open matrix file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return csv ? parse_matrix_csv(buf.str()) : parse_matrix_json(buf.str());
}

std::string matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (const Complex& z : m.entries()) entries.push_back({z.real(), z.imag()});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}}.dump();
}

std::vector<Complex> parse_grid(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) parse_error("grid needs a kind prefix", text);
  const std::string_view kind = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  if (kind == "list") return parse_complex_list(body);

  const auto fields = split(body, ':');
  if (kind == "circle") {
    if (fields.size() != 2) parse_error("circle grid is circle:R:N", text);
    const double radius = parse_real(fields[0]);
    const std::size_t count = parse_count(fields[1]);
    if (!(radius > 0.0)) parse_error("circle radius must be positive", text);
    if (count == 0) parse_error("grid must not be empty", text);
    return circle_points(radius, count);
  }
  if (kind == "segment") {
    if (fields.size() != 3) parse_error("segment grid is segment:Z1:Z2:N", text);
    const Complex a = parse_complex(fields[0]);
    const Complex b = parse_complex(fields[1]);
    const std::size_t count = parse_count(fields[2]);
    if (count == 0) parse_error("grid must not be empty", text);
    std::vector<Complex> pts(count);
    for (std::size_t k = 0; k < count; ++k) {
      const double t = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
      pts[k] = a + t * (b - a);
    }
    return pts;
  }
  parse_error("unknown grid kind", text);
}

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

}  // namespace ratlas
