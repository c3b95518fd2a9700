#pragma once

// Lexical-form checks shared by the STAD parser and serializer.

#include <string_view>

namespace trust::lexical {

inline bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_digit(c)) return false;
  }
  return true;
}

inline std::string_view strip_sign(std::string_view s) {
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  return s;
}

inline bool valid_integer(std::string_view s) { return all_digits(strip_sign(s)); }

// Decimal lexical space; integers are decimals too.
inline bool valid_decimal(std::string_view s) {
  s = strip_sign(s);
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return all_digits(s);
  auto whole = s.substr(0, dot), frac = s.substr(dot + 1);
  if (whole.empty() && frac.empty()) return false;
  return (whole.empty() || all_digits(whole)) && (frac.empty() || all_digits(frac));
}

// Forms the STAD grammar reads back as a bare DECIMAL token.
inline bool bare_decimal(std::string_view s) {
  s = strip_sign(s);
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return false;
  auto whole = s.substr(0, dot), frac = s.substr(dot + 1);
  return (whole.empty() || all_digits(whole)) && all_digits(frac);
}

// Local part of a prefixed name that the parser reads back unchanged.
inline bool valid_local_name(std::string_view s) {
  if (s.empty()) return false;
  if (!is_alnum(s.front()) && s.front() != '_') return false;
  if (s.back() == '.') return false;
  for (char c : s) {
    if (!is_alnum(c) && c != '_' && c != '-' && c != '.') return false;
  }
  return true;
}

}  // namespace trust::lexical
