#include "mbverify/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace mbverify::json {

std::string number(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string number(Complex v) { return "[" + number(v.real()) + ", " + number(v.imag()) + "]"; }

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

Object& Object::add(std::string_view key, const std::vector<Complex>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + number(v[i]);
  return raw(key, s + "]");
}

Object& Object::add(std::string_view key, const std::vector<std::string>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + quote(v[i]);
  return raw(key, s + "]");
}

Object& Object::raw(std::string_view key, std::string value) {
  fields_.emplace_back(std::string(key), std::move(value));
  return *this;
}

std::string Object::str(bool pretty) const {
  std::string out = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i) out += ",";
    out += pretty ? "\n  " : (i ? " " : "");
    out += quote(fields_[i].first) + ": " + fields_[i].second;
  }
  out += pretty && !fields_.empty() ? "\n}" : "}";
  return out;
}

}  // namespace mbverify::json
