#pragma once

// Deterministic serialization helpers.  Reports and records are emitted
// through this one code path so that identical inputs produce identical
// bytes, independent of locale, stream state, or how many threads did the
// computing.  Floats are printed with %.17g (round-trip exact for double);
// the human-readable "plain" format uses %.10g.

#include <cstdio>
#include <string>

#include "hker/scalar.hpp"

namespace hker {
namespace detail {

inline std::string fmt_double_plain(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

// Incremental writer for flat JSON objects and arrays.  Not general purpose:
// just enough structure for the record shapes this library emits, with full
// control over byte output.
class JsonWriter {
 public:
  std::string str() const { return out_; }

  void begin_object() { out_ += '{'; first_ = true; }
  void end_object() { out_ += '}'; first_ = false; }
  void begin_array(const std::string& key) {
    comma();
    out_ += '"' + json_escape(key) + "\":[";
    first_ = true;
  }
  void end_array() { out_ += ']'; first_ = false; }
  void begin_object_in_array() { comma(); out_ += '{'; first_ = true; }

  void field(const std::string& key, const std::string& value) {
    comma();
    out_ += '"' + json_escape(key) + "\":\"" + json_escape(value) + '"';
  }
  void field(const std::string& key, double value) {
    comma();
    out_ += '"' + json_escape(key) + "\":" + fmt_double(value);
  }
  void field(const std::string& key, bool value) {
    comma();
    out_ += '"' + json_escape(key) + (value ? "\":true" : "\":false");
  }
  void field_uint(const std::string& key, unsigned long long value) {
    comma();
    out_ += '"' + json_escape(key) + "\":" + std::to_string(value);
  }
  // Scalars with a zero imaginary part print as a bare number, otherwise as
  // a [re, im] pair.
  void field(const std::string& key, Scalar value) {
    comma();
    out_ += '"' + json_escape(key) + "\":";
    if (value.imag() == 0.0) {
      out_ += fmt_double(value.real());
    } else {
      out_ += '[' + fmt_double(value.real()) + ',' + fmt_double(value.imag()) + ']';
    }
  }
  // Pre-rendered JSON (nested writers).
  void field_raw(const std::string& key, const std::string& json) {
    comma();
    out_ += '"' + json_escape(key) + "\":" + json;
  }
  void append_raw(const std::string& json) {
    comma();
    out_ += json;
  }

 private:
  void comma() {
    if (!first_) out_ += ',';
    first_ = false;
  }

  std::string out_;
  bool first_ = true;
};

}  // namespace detail
}  // namespace hker
