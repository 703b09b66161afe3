#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace orderflow::config {

// Flat key=value run configuration.  '#' starts a comment.  Keys outside the
// registered set are rejected so typos cannot silently change a run.
class RunConfig {
 public:
  static RunConfig from_file(const std::string& path, const std::set<std::string>& known_keys);
  static RunConfig from_string(const std::string& text, const std::set<std::string>& known_keys);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback = "") const;

  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  // resolved key=value lines, sorted, for the reproducibility echo
  std::string echo() const;

 private:
  std::map<std::string, std::string> values_;
};

// keys understood by the model-building helpers below
const std::set<std::string>& model_keys();

}  // namespace orderflow::config
