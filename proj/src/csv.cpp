#include "uavnet/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "uavnet/error.hpp"

namespace uavnet {

std::string format_number(double value) {
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  if (std::isnan(value)) {
    return "nan";
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) {
    throw Error(ErrorCategory::invalid_argument, "format_number: conversion failed");
  }
  return std::string(buf, end);
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw Error(ErrorCategory::io,
                  "cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCategory::io, "cannot open " + path.string() + " for writing");
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) {
    throw Error(ErrorCategory::io, "write failed: " + path.string());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCategory::io, "cannot open " + path.string() + " for reading");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace uavnet
