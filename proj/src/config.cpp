#include "eqnav/bench/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eqnav::bench {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& name) {
  Config cfg;
  cfg.name_ = name;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        cfg.fail("unterminated section header", lineno);
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) cfg.fail("empty section name", lineno);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) cfg.fail("expected key = value", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) cfg.fail("empty key", lineno);
    if (section.empty()) cfg.fail("key outside any [section]", lineno);
    const std::string full = section + "." + key;
    if (cfg.entries_.count(full)) cfg.fail("duplicate key " + full, lineno);
    cfg.entries_[full] = Entry{value, lineno, false};
  }
  if (cfg.has("run", "schema_version")) {
    cfg.schema_version_ = static_cast<int>(cfg.integer("run", "schema_version"));
    if (cfg.schema_version_ != 1)
      throw std::runtime_error(name + ": unsupported schema_version");
  }
  return cfg;
}

const Config::Entry* Config::find(const std::string& section,
                                  const std::string& key) const {
  const auto it = entries_.find(section + "." + key);
  if (it == entries_.end()) return nullptr;
  it->second.consumed = true;
  return &it->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return entries_.count(section + "." + key) > 0;
}

double Config::number(const std::string& section, const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) throw std::runtime_error(name_ + ": missing key " + section + "." + key);
  size_t used = 0;
  double v;
  try {
    v = std::stod(e->value, &used);
  } catch (const std::exception&) {
    fail("not a number: " + section + "." + key, e->line);
  }
  if (used != e->value.size())
    fail("trailing characters in number " + section + "." + key, e->line);
  return v;
}

double Config::number_or(const std::string& section, const std::string& key,
                         double fallback) {
  return has(section, key) ? number(section, key) : fallback;
}

long Config::integer(const std::string& section, const std::string& key) const {
  const double v = number(section, key);
  const long l = static_cast<long>(v);
  if (static_cast<double>(l) != v)
    throw std::runtime_error(name_ + ": expected integer for " + section + "." + key);
  return l;
}

long Config::integer_or(const std::string& section, const std::string& key,
                        long fallback) {
  return has(section, key) ? integer(section, key) : fallback;
}

std::string Config::text(const std::string& section, const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) throw std::runtime_error(name_ + ": missing key " + section + "." + key);
  return e->value;
}

std::string Config::text_or(const std::string& section, const std::string& key,
                            const std::string& fallback) {
  return has(section, key) ? text(section, key) : fallback;
}

std::vector<std::string> Config::list(const std::string& section,
                                      const std::string& key) const {
  std::vector<std::string> out;
  std::istringstream ss(text(section, key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void Config::ensure_all_consumed() const {
  for (const auto& [k, e] : entries_) {
    if (!e.consumed)
      throw std::runtime_error(name_ + ":" + std::to_string(e.line) +
                               ": unknown key " + k);
  }
}

void Config::fail(const std::string& what, int line) const {
  throw std::runtime_error(name_ + ":" + std::to_string(line) + ": " + what);
}

}  // namespace eqnav::bench
