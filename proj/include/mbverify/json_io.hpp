#pragma once

// Minimal ordered JSON writer. Numbers are printed with 17 significant
// digits so that every double round-trips; non-finite values become the
// strings "inf", "-inf" and "nan". Field order is insertion order, which
// keeps serialized reports byte-stable.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mbverify/core.hpp"

namespace mbverify::json {

std::string number(double v);
std::string number(Complex v);  // [re, im]
std::string quote(std::string_view s);

class Object {
 public:
  Object& add(std::string_view key, double v) { return raw(key, number(v)); }
  Object& add(std::string_view key, Complex v) { return raw(key, number(v)); }
  Object& add(std::string_view key, std::string_view v) { return raw(key, quote(v)); }
  Object& add(std::string_view key, const char* v) { return raw(key, quote(v)); }
  Object& add(std::string_view key, bool v) { return raw(key, v ? "true" : "false"); }
  Object& add(std::string_view key, int v) { return raw(key, std::to_string(v)); }
  Object& add(std::string_view key, std::uint64_t v) { return raw(key, std::to_string(v)); }
  Object& add(std::string_view key, const Object& v) { return raw(key, v.str()); }
  Object& add(std::string_view key, const std::vector<Complex>& v);
  Object& add(std::string_view key, const std::vector<std::string>& v);
  // Inserts already-serialized JSON.
  Object& raw(std::string_view key, std::string value);

  // Compact single-line form, or two-space indented when pretty.
  std::string str(bool pretty = false) const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

}  // namespace mbverify::json
