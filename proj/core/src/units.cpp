#include "ghostpin/units.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "ghostpin/errors.hpp"

namespace ghostpin {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

double parse_double(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    fail(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'");
  return value;
}

double parse_length(std::string_view text) {
  text = trim(text);
  int exponent_shift = 0;
  auto ends_with = [&](std::string_view suffix) {
    return text.size() > suffix.size() &&
           text.substr(text.size() - suffix.size()) == suffix;
  };
  if (ends_with("nm")) { exponent_shift = -9; text.remove_suffix(2); }
  else if (ends_with("um")) { exponent_shift = -6; text.remove_suffix(2); }
  else if (ends_with("µm")) { exponent_shift = -6; text.remove_suffix(3); }  // µm
  else if (ends_with("mm")) { exponent_shift = -3; text.remove_suffix(2); }
  else if (ends_with("cm")) { exponent_shift = -2; text.remove_suffix(2); }
  else if (ends_with("m")) { text.remove_suffix(1); }
  text = trim(text);
  if (exponent_shift == 0) return parse_double(text);

  // Shift the decimal exponent textually so the scaled value is parsed in
  // one correctly-rounded step ("350nm" reads exactly as 350e-9 would).
  std::string digits(text);
  int exponent = exponent_shift;
  const auto e_pos = digits.find_first_of("eE");
  if (e_pos != std::string::npos) {
    const std::string tail = digits.substr(e_pos + 1);
    int given = 0;
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), given);
    if (ec != std::errc{} || ptr != tail.data() + tail.size())
      fail(ErrorCode::ParseError, "bad exponent in '" + std::string(text) + "'");
    exponent += given;
    digits.erase(e_pos);
  }
  if (digits.empty() ||
      digits.find_first_not_of("+-0123456789.") != std::string::npos)
    fail(ErrorCode::ParseError, "not a length: '" + std::string(text) + "'");
  return parse_double(digits + "e" + std::to_string(exponent));
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_length(double meters) {
  const double a = std::fabs(meters);
  char buf[64];
  if (meters == 0.0) return "0 m";
  if (a < 1e-6) std::snprintf(buf, sizeof buf, "%.4g nm", meters * 1e9);
  else if (a < 1e-3) std::snprintf(buf, sizeof buf, "%.4g um", meters * 1e6);
  else if (a < 1.0) std::snprintf(buf, sizeof buf, "%.4g mm", meters * 1e3);
  else std::snprintf(buf, sizeof buf, "%.4g m", meters);
  return buf;
}

}  // namespace ghostpin
