#include "memnn/profile.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "memnn/signal.hpp"

namespace memnn {

namespace {

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> try_number(const std::string& text) {
  try {
    return parse_double(text);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace

bool ParameterProfile::contains(const std::string& key) const { return find(key) != nullptr; }

const ParameterProfile::Entry* ParameterProfile::find(const std::string& key) const {
  for (const Entry& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

double ParameterProfile::number(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw std::invalid_argument("missing parameter '" + key + "'");
  if (!e->number) throw std::invalid_argument("parameter '" + key + "' is not numeric: '" + e->text + "'");
  return *e->number;
}

double ParameterProfile::number_or(const std::string& key, double fallback) const {
  return contains(key) ? number(key) : fallback;
}

std::string ParameterProfile::token(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw std::invalid_argument("missing parameter '" + key + "'");
  return e->text;
}

std::string ParameterProfile::token_or(const std::string& key, const std::string& fallback) const {
  const Entry* e = find(key);
  return e ? e->text : fallback;
}

void ParameterProfile::set_number(const std::string& key, double value) {
  set_token(key, format_double(value));
}

void ParameterProfile::set_token(const std::string& key, const std::string& value) {
  for (Entry& e : entries) {
    if (e.key == key) {
      e.text = value;
      e.number = try_number(value);
      return;
    }
  }
  entries.push_back({key, value, try_number(value)});
}

ParameterProfile read_profile(std::istream& in) {
  ParameterProfile profile;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trimmed(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "line " << line_no << ": expected 'name = value'";
      throw std::invalid_argument(os.str());
    }
    const std::string key = trimmed(body.substr(0, eq));
    const std::string value = trimmed(body.substr(eq + 1));
    if (key.empty() || value.empty()) {
      std::ostringstream os;
      os << "line " << line_no << ": empty name or value";
      throw std::invalid_argument(os.str());
    }
    if (profile.contains(key)) {
      std::ostringstream os;
      os << "line " << line_no << ": duplicate parameter '" << key << "'";
      throw std::invalid_argument(os.str());
    }
    profile.entries.push_back({key, value, try_number(value)});
  }
  return profile;
}

ParameterProfile read_profile_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open profile: " + path);
  try {
    return read_profile(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_profile(std::ostream& out, const ParameterProfile& profile) {
  for (const auto& e : profile.entries) out << e.key << " = " << e.text << '\n';
}

void write_profile_file(const std::string& path, const ParameterProfile& profile) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
  write_profile(out, profile);
}

}  // namespace memnn
