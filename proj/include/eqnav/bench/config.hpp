#pragma once

#include <map>
#include <string>
#include <vector>

namespace eqnav::bench {

// Flat sectioned key=value files. '#' comments; unknown keys are errors at
// consumption time (see require/consume checking below).
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& name);

  bool has(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key) const;
  double number_or(const std::string& section, const std::string& key,
                   double fallback);
  long integer(const std::string& section, const std::string& key) const;
  long integer_or(const std::string& section, const std::string& key,
                  long fallback);
  std::string text(const std::string& section, const std::string& key) const;
  std::string text_or(const std::string& section, const std::string& key,
                      const std::string& fallback);
  std::vector<std::string> list(const std::string& section,
                                const std::string& key) const;

  // Every key must have been read by one of the accessors; throws naming the
  // first untouched key (guards against silent typos).
  void ensure_all_consumed() const;

  int schema_version() const { return schema_version_; }

 private:
  struct Entry {
    std::string value;
    int line;
    mutable bool consumed = false;
  };
  std::map<std::string, Entry> entries_;  // "section.key"
  std::string name_;
  int schema_version_ = 1;

  const Entry* find(const std::string& section, const std::string& key) const;
  [[noreturn]] void fail(const std::string& what, int line) const;
};

}  // namespace eqnav::bench
