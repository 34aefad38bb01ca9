#ifndef FINITETRAP_IO_HPP
#define FINITETRAP_IO_HPP

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "finitetrap/errors.hpp"

namespace finitetrap {

// 17 significant digits: lossless text round-trip for IEEE doubles.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Write-to-temp-then-rename so readers never observe a partial file.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot open output file " + tmp.string());
    out << content;
    if (!out.flush()) throw UsageError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// Minimal ordered JSON writer. Values are preformatted strings; numbers go
// through format_double so the files stay byte-identical across runs.
class JsonWriter {
 public:
  JsonWriter& begin_object() { return token("{", true); }
  JsonWriter& end_object() { return close("}"); }
  JsonWriter& begin_array(const std::string& key) {
    member_key(key);
    out_ += "[";
    first_ = true;
    return *this;
  }
  JsonWriter& end_array() { return close("]"); }

  JsonWriter& key_string(const std::string& key, const std::string& value) {
    member_key(key);
    out_ += quote(value);
    return *this;
  }
  JsonWriter& key_number(const std::string& key, double value) {
    member_key(key);
    out_ += format_double(value);
    return *this;
  }
  JsonWriter& key_int(const std::string& key, long long value) {
    member_key(key);
    out_ += std::to_string(value);
    return *this;
  }
  JsonWriter& key_bool(const std::string& key, bool value) {
    member_key(key);
    out_ += value ? "true" : "false";
    return *this;
  }
  JsonWriter& key_null(const std::string& key) {
    member_key(key);
    out_ += "null";
    return *this;
  }
  JsonWriter& key_object(const std::string& key) {
    member_key(key);
    out_ += "{";
    first_ = true;
    return *this;
  }
  JsonWriter& element_number(double value) {
    separator();
    out_ += format_double(value);
    return *this;
  }
  JsonWriter& element_string(const std::string& value) {
    separator();
    out_ += quote(value);
    return *this;
  }

  const std::string& str() const { return out_; }

 private:
  JsonWriter& token(const std::string& t, bool opens) {
    separator();
    out_ += t;
    first_ = opens;
    return *this;
  }
  JsonWriter& close(const std::string& t) {
    out_ += t;
    first_ = false;
    return *this;
  }
  void member_key(const std::string& key) {
    separator();
    out_ += quote(key) + ":";
  }
  void separator() {
    if (!first_) out_ += ",";
    first_ = false;
  }
  static std::string quote(const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
      switch (ch) {
        case '"': q += "\\\""; break;
        case '\\': q += "\\\\"; break;
        case '\n': q += "\\n"; break;
        case '\t': q += "\\t"; break;
        default: q += ch;
      }
    }
    q += "\"";
    return q;
  }

  std::string out_;
  bool first_ = true;
};

// CSV with a fixed header; rows of doubles through format_double.
inline std::string csv_table(const std::string& header, const std::vector<std::vector<double>>& rows) {
  std::string out = header + "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace finitetrap

#endif  // FINITETRAP_IO_HPP
