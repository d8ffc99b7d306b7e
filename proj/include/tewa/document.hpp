#pragma once

// Shared helpers for reading the JSON documents (catalogs, scenarios).
// Readers collect every problem they find, each tagged with a JSON-pointer
// style path, and only throw once the whole document has been visited.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace tewa {

using Json = nlohmann::ordered_json;

struct Diagnostic {
  std::string path;
  std::string message;

  std::string str() const { return (path.empty() ? std::string("/") : path) + ": " + message; }
};

class DocumentError : public std::runtime_error {
 public:
  explicit DocumentError(std::vector<Diagnostic> diagnostics)
      : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  static std::string summarize(const std::vector<Diagnostic>& ds) {
    std::string out;
    for (const auto& d : ds) {
      if (!out.empty()) out += "\n";
      out += d.str();
    }
    return out.empty() ? std::string("invalid document") : out;
  }

  std::vector<Diagnostic> diagnostics_;
};

namespace detail {

inline std::string join_path(const std::string& base, const std::string& key) { return base + "/" + key; }
inline std::string join_path(const std::string& base, std::size_t index) { return base + "/" + std::to_string(index); }

/// Field accessors that record a diagnostic instead of throwing.
class Reader {
 public:
  std::vector<Diagnostic>& diagnostics() { return diags_; }
  bool ok() const { return diags_.empty(); }

  void error(std::string path, std::string message) { diags_.push_back({std::move(path), std::move(message)}); }

  void throw_if_failed() const {
    if (!diags_.empty()) throw DocumentError(diags_);
  }

  const Json* member(const Json& obj, const std::string& path, const std::string& key, bool required = true) {
    if (!obj.is_object()) {
      error(path, "expected an object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) error(join_path(path, key), "missing required field");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> number(const Json& obj, const std::string& path, const std::string& key,
                               std::optional<double> fallback = std::nullopt) {
    const Json* v = member(obj, path, key, !fallback.has_value());
    if (!v) return fallback;
    if (!v->is_number()) {
      error(join_path(path, key), "expected a number");
      return std::nullopt;
    }
    const double d = v->get<double>();
    if (!std::isfinite(d)) {
      error(join_path(path, key), "expected a finite number");
      return std::nullopt;
    }
    return d;
  }

  /// Number constrained to [lo, hi].
  std::optional<double> ranged(const Json& obj, const std::string& path, const std::string& key, double lo, double hi,
                               std::optional<double> fallback = std::nullopt) {
    auto d = number(obj, path, key, fallback);
    if (d && (*d < lo || *d > hi)) {
      error(join_path(path, key), "value " + format_number(*d) + " out of range [" + format_number(lo) + ", " +
                                      format_number(hi) + "]");
      return std::nullopt;
    }
    return d;
  }

  std::optional<double> positive(const Json& obj, const std::string& path, const std::string& key,
                                 std::optional<double> fallback = std::nullopt) {
    auto d = number(obj, path, key, fallback);
    if (d && !(*d > 0.0)) {
      error(join_path(path, key), "value must be positive");
      return std::nullopt;
    }
    return d;
  }

  std::optional<std::string> string(const Json& obj, const std::string& path, const std::string& key,
                                    std::optional<std::string> fallback = std::nullopt) {
    const Json* v = member(obj, path, key, !fallback.has_value());
    if (!v) return fallback;
    if (!v->is_string()) {
      error(join_path(path, key), "expected a string");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  /// Identifier: non-empty, no whitespace, no '=' or ',' (they would break the event log).
  std::optional<std::string> identifier(const Json& obj, const std::string& path, const std::string& key) {
    auto s = string(obj, path, key);
    if (!s) return s;
    if (s->empty() || s->find_first_of(" \t\r\n=,:") != std::string::npos) {
      error(join_path(path, key), "identifier '" + *s + "' must be non-empty without spaces, '=', ',' or ':'");
      return std::nullopt;
    }
    return s;
  }

  const Json* array(const Json& obj, const std::string& path, const std::string& key, bool required = true) {
    const Json* v = member(obj, path, key, required);
    if (!v) return nullptr;
    if (!v->is_array()) {
      error(join_path(path, key), "expected an array");
      return nullptr;
    }
    return v;
  }

  static std::string format_number(double d) {
    Json j = d;
    return j.dump();
  }

 private:
  std::vector<Diagnostic> diags_;
};

}  // namespace detail
}  // namespace tewa
