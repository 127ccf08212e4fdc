#ifndef ADAFW_DETAIL_TEXT_HPP
#define ADAFW_DETAIL_TEXT_HPP

#include <charconv>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adafw::detail {

/// Shortest decimal form that round-trips to the same double; keeps emitted
/// files both readable and bit-reproducible.
inline std::string format_double(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (result.ec != std::errc()) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buffer, result.ptr);
}

inline bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), out);
  return result.ec == std::errc() && result.ptr == text.data() + text.size();
}

inline bool parse_long(std::string_view text, long long& out) {
  if (text.empty()) return false;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), out);
  return result.ec == std::errc() && result.ptr == text.data() + text.size();
}

}  // namespace adafw::detail

#endif  // ADAFW_DETAIL_TEXT_HPP
