#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace memnn {

/* Flat key=value parameter file. One "name = value" pair per line,
 * '#' starts a comment, names are unique, insertion order is kept.
 * Values are numbers or bare enum-like tokens. */
struct ParameterProfile {
  struct Entry {
    std::string key;
    std::string text;              // raw value text
    std::optional<double> number;  // set when text parses as a number
  };

  std::vector<Entry> entries;

  bool contains(const std::string& key) const;
  const Entry* find(const std::string& key) const;

  /* Throw std::invalid_argument when the key is absent (or, for
   * number(), not numeric). */
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::string token(const std::string& key) const;
  std::string token_or(const std::string& key, const std::string& fallback) const;

  void set_number(const std::string& key, double value);
  void set_token(const std::string& key, const std::string& value);
};

ParameterProfile read_profile(std::istream& in);
ParameterProfile read_profile_file(const std::string& path);
void write_profile(std::ostream& out, const ParameterProfile& profile);
void write_profile_file(const std::string& path, const ParameterProfile& profile);

}  // namespace memnn
