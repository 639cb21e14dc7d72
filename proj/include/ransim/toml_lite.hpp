#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace ransim::toml {

// Minimal TOML subset: comments, [table] headers (flattened to "table.key"),
// and key = value with string / integer / float / boolean / homogeneous-array
// values. Enough for flat scenario configs; nested tables and dates are not
// supported.
struct Value {
  std::variant<std::string, int64_t, double, bool,
               std::vector<std::string>, std::vector<int64_t>, std::vector<double>>
      data;

  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_int() const { return std::holds_alternative<int64_t>(data); }
  bool is_float() const { return std::holds_alternative<double>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }

  const std::string& as_string() const { return std::get<std::string>(data); }
  int64_t as_int() const { return std::get<int64_t>(data); }
  bool as_bool() const { return std::get<bool>(data); }
  double as_float() const;  // accepts integer values too
  std::vector<int64_t> as_int_array() const;
  std::vector<double> as_float_array() const;
  std::vector<std::string> as_string_array() const;
};

using Table = std::map<std::string, Value>;

Table parse(const std::string& text);
Table parse_file(const std::string& path);

}  // namespace ransim::toml
