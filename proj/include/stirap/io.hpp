#pragma once

// Small text-output helpers shared by the CSV and SVG writers.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

namespace stirap {

// Locale-independent, 12 significant digits.
inline std::string format_sig(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Writes the whole file or nothing: a partially written file is removed.
inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) {
    out.close();
    std::error_code ec;
    std::filesystem::remove(path, ec);
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace stirap
