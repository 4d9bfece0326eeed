#pragma once

#include "qseed/matrix.hpp"

#include "json.hpp"

#include <sstream>
#include <string>

namespace qseed {

using json = nlohmann::json;

template <class T>
auto to_json(const Matrix<T>& m) -> json {
  json entries = json::array();
  for (const auto& x : m.data()) entries.push_back(to_string(x));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

namespace detail {

inline void read_shape(const json& j, std::size_t& rows, std::size_t& cols) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw DomainError("matrix JSON needs rows, cols, entries");
  rows = j.at("rows").get<std::size_t>();
  cols = j.at("cols").get<std::size_t>();
  if (!j.at("entries").is_array() || j.at("entries").size() != rows * cols)
    throw DimensionError("matrix JSON entry count does not match shape");
}

inline auto entry_text(const json& e) -> std::string {
  if (e.is_string()) return e.get<std::string>();
  if (e.is_number_integer()) return std::to_string(e.get<long long>());
  throw DomainError("matrix entries must be strings or integers");
}

}  // namespace detail

inline auto int_matrix_from_json(const json& j) -> IntMatrix {
  std::size_t rows = 0, cols = 0;
  detail::read_shape(j, rows, cols);
  std::vector<BigInt> data;
  data.reserve(rows * cols);
  for (const auto& e : j.at("entries")) data.push_back(parse_bigint(detail::entry_text(e)));
  return IntMatrix(rows, cols, std::move(data));
}

inline auto rat_matrix_from_json(const json& j) -> RatMatrix {
  std::size_t rows = 0, cols = 0;
  detail::read_shape(j, rows, cols);
  std::vector<Rational> data;
  data.reserve(rows * cols);
  for (const auto& e : j.at("entries")) data.push_back(parse_rational(detail::entry_text(e)));
  return RatMatrix(rows, cols, std::move(data));
}

template <class T>
auto to_csv(const Matrix<T>& m) -> std::string {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << to_string(m(i, j));
    out << '\n';
  }
  return out.str();
}

namespace detail {

inline auto latex_entry(const BigInt& v) -> std::string { return v.str(); }

inline auto latex_entry(const Rational& v) -> std::string {
  const BigInt& d = boost::multiprecision::denominator(v);
  if (d == 1) return boost::multiprecision::numerator(v).str();
  BigInt num = boost::multiprecision::numerator(v);
  std::string sign = num < 0 ? "-" : "";
  if (num < 0) num = -num;
  return sign + "\\frac{" + num.str() + "}{" + d.str() + "}";
}

}  // namespace detail

// Array environment with vertical rules every `block` columns and \hline every `block` rows.
template <class T>
auto to_latex(const Matrix<T>& m, std::size_t block = 0) -> std::string {
  std::ostringstream out;
  out << "\\left(\\begin{array}{";
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (block && j && j % block == 0) out << '|';
    out << 'r';
  }
  out << "}\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (block && i && i % block == 0) out << "\\hline\n";
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " & " : "") << detail::latex_entry(m(i, j));
    out << (i + 1 < m.rows() ? " \\\\\n" : "\n");
  }
  out << "\\end{array}\\right)\n";
  return out.str();
}

}  // namespace qseed
