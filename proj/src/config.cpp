#include "fmgame/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "fmgame/errors.hpp"

namespace fmgame {

namespace {

using Field = double ModelParams::*;

constexpr std::array<std::pair<const char*, Field>, 7> kFields{{
    {"theta", &ModelParams::theta},
    {"c", &ModelParams::c},
    {"w_high", &ModelParams::w_high},
    {"w_low", &ModelParams::w_low},
    {"eta_cap", &ModelParams::eta_cap},
    {"k", &ModelParams::k},
    {"s", &ModelParams::s},
}};

int field_index(const std::string& key) {
  for (std::size_t i = 0; i < kFields.size(); ++i) {
    if (key == kFields[i].first) return static_cast<int>(i);
  }
  return -1;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text, const std::string& where) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(where + ": not a finite number: '" + text + "'");
  }
  return value;
}

}  // namespace

ModelParams parse_config(const std::string& text, const std::string& source) {
  ModelParams params;
  std::array<bool, kFields.size()> seen{};
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = source + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const int idx = field_index(key);
    if (idx < 0) throw ConfigError(where + ": unknown key '" + key + "'");
    if (seen[idx]) throw ConfigError(where + ": duplicate key '" + key + "'");
    seen[idx] = true;
    params.*kFields[idx].second = parse_number(value, where);
  }

  std::string missing;
  for (std::size_t i = 0; i < kFields.size(); ++i) {
    if (!seen[i]) missing += missing.empty() ? kFields[i].first : std::string(", ") + kFields[i].first;
  }
  if (!missing.empty()) throw ConfigError(source + ": missing keys: " + missing);
  return params;
}

ModelParams load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading config file: " + path);
  return parse_config(buf.str(), path);
}

void set_param(ModelParams& params, const std::string& key, double value) {
  const int idx = field_index(key);
  if (idx < 0) throw ConfigError("unknown parameter '" + key + "'");
  params.*kFields[idx].second = value;
}

double get_param(const ModelParams& params, const std::string& key) {
  const int idx = field_index(key);
  if (idx < 0) throw ConfigError("unknown parameter '" + key + "'");
  return params.*kFields[idx].second;
}

}  // namespace fmgame
