#include "ransim/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ransim/errors.hpp"

namespace ransim::toml {

double Value::as_float() const {
  if (is_int()) return static_cast<double>(as_int());
  return std::get<double>(data);
}

std::vector<int64_t> Value::as_int_array() const {
  return std::get<std::vector<int64_t>>(data);
}

std::vector<double> Value::as_float_array() const {
  if (std::holds_alternative<std::vector<int64_t>>(data)) {
    std::vector<double> out;
    for (const int64_t v : std::get<std::vector<int64_t>>(data)) {
      out.push_back(static_cast<double>(v));
    }
    return out;
  }
  return std::get<std::vector<double>>(data);
}

std::vector<std::string> Value::as_string_array() const {
  return std::get<std::vector<std::string>>(data);
}

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(ErrorCode::ConfigError, "line " + std::to_string(line) + ": " + what);
}

std::string strip(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

// Drops a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

Value parse_scalar(const std::string& raw, int line) {
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
    return Value{raw.substr(1, raw.size() - 2)};
  }
  if (raw == "true") return Value{true};
  if (raw == "false") return Value{false};

  int64_t int_value = 0;
  auto int_result = std::from_chars(raw.data(), raw.data() + raw.size(), int_value);
  if (int_result.ec == std::errc() && int_result.ptr == raw.data() + raw.size()) {
    return Value{int_value};
  }
  double float_value = 0.0;
  auto float_result = std::from_chars(raw.data(), raw.data() + raw.size(), float_value);
  if (float_result.ec == std::errc() && float_result.ptr == raw.data() + raw.size()) {
    return Value{float_value};
  }
  fail(line, "cannot parse value '" + raw + "'");
}

std::vector<std::string> split_array_items(const std::string& inner, int line) {
  std::vector<std::string> items;
  std::string current;
  bool in_string = false;
  for (const char c : inner) {
    if (c == '"') in_string = !in_string;
    if (c == ',' && !in_string) {
      items.push_back(strip(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (in_string) fail(line, "unterminated string");
  const std::string last = strip(current);
  if (!last.empty()) items.push_back(last);
  return items;
}

Value parse_array(const std::string& raw, int line) {
  const auto items = split_array_items(raw.substr(1, raw.size() - 2), line);
  if (items.empty()) return Value{std::vector<int64_t>{}};

  std::vector<Value> parsed;
  for (const auto& item : items) parsed.push_back(parse_scalar(item, line));

  if (parsed.front().is_string()) {
    std::vector<std::string> out;
    for (const auto& v : parsed) {
      if (!v.is_string()) fail(line, "mixed array types");
      out.push_back(v.as_string());
    }
    return Value{out};
  }
  if (std::all_of(parsed.begin(), parsed.end(), [](const Value& v) { return v.is_int(); })) {
    std::vector<int64_t> out;
    for (const auto& v : parsed) out.push_back(v.as_int());
    return Value{out};
  }
  std::vector<double> out;
  for (const auto& v : parsed) {
    if (!v.is_int() && !v.is_float()) fail(line, "mixed array types");
    out.push_back(v.as_float());
  }
  return Value{out};
}

}  // namespace

Table parse(const std::string& text) {
  Table table;
  std::stringstream stream(text);
  std::string line;
  std::string section;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    const std::string content = strip(strip_comment(line));
    if (content.empty()) continue;

    if (content.front() == '[') {
      if (content.back() != ']') fail(line_number, "unterminated table header");
      section = strip(content.substr(1, content.size() - 2));
      if (section.empty()) fail(line_number, "empty table name");
      continue;
    }

    const auto eq = content.find('=');
    if (eq == std::string::npos) fail(line_number, "expected key = value");
    const std::string key = strip(content.substr(0, eq));
    const std::string raw = strip(content.substr(eq + 1));
    if (key.empty()) fail(line_number, "empty key");
    if (raw.empty()) fail(line_number, "empty value");

    const std::string full_key = section.empty() ? key : section + "." + key;
    if (table.count(full_key) > 0) fail(line_number, "duplicate key '" + full_key + "'");

    if (raw.front() == '[') {
      if (raw.back() != ']') fail(line_number, "unterminated array");
      table.emplace(full_key, parse_array(raw, line_number));
    } else {
      table.emplace(full_key, parse_scalar(raw, line_number));
    }
  }
  return table;
}

Table parse_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::FileNotFound, path);
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse(buffer.str());
}

}  // namespace ransim::toml
