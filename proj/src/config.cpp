#include "orderflow/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace orderflow::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

RunConfig RunConfig::from_string(const std::string& text, const std::set<std::string>& known) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (known.count(key) == 0)
      throw std::runtime_error("config: unknown key '" + key + "'");
    cfg.values_[key] = value;
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path, const std::set<std::string>& known) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str(), known);
}

double RunConfig::get_double(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw std::runtime_error("config: missing key '" + key + "'");
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: key '" + key + "' is not a number: " + it->second);
  }
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::int64_t RunConfig::get_int(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw std::runtime_error("config: missing key '" + key + "'");
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: key '" + key + "' is not an integer: " + it->second);
  }
}

std::int64_t RunConfig::get_int(const std::string& key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string RunConfig::echo() const {
  std::ostringstream os;
  for (const auto& [k, v] : values_) os << k << "=" << v << "\n";
  return os.str();
}

const std::set<std::string>& model_keys() {
  static const std::set<std::string> keys = {
      "alpha0", "lambda0", "mu0",       "lambda1",    "T",          "seed",
      "K0",     "mu1",     "grid_n",    "paths",      "threads",    "out",
      "phi1_mass", "phi2_mass", "core_family", "reaction_family",
      "core_exp_weights", "core_exp_rates", "reaction_exp_weights", "reaction_exp_rates",
      "H",      "sigma_w", "sigma_h",   "dt",         "delta",      "max_lag",
      "rate",   "duration", "kappa",    "lambda_bar", "alpha1",     "h0",
      "process", "n",      "horizon",
  };
  return keys;
}

}  // namespace orderflow::config
