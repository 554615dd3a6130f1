#ifndef MAGQ_RUN_CONFIG_HPP
#define MAGQ_RUN_CONFIG_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace magq {

/// Configuration problem: bad file, unknown/duplicate key, out-of-range
/// value. The CLI maps this to exit code 2.
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

enum class OutputFormat { csv, json };

/// Allowed key of an experiment's config file.
struct KeySpec {
    std::string name;
    std::string unit;  // "1", "s", "rad/s", ... for the metadata echo
    double min;
    double max;
    double fallback;
    std::string help;
};

/// One experiment invocation: validated key-value parameters plus output
/// destination. Values outside a key's range are rejected at load time.
struct RunConfig {
    std::string experiment;
    std::map<std::string, double> parameters;
    std::string output_path;  // empty = stdout
    OutputFormat format = OutputFormat::csv;

    double at(const std::string& key) const;
};

/// Key tables for every experiment (used for validation and --help text).
const std::vector<KeySpec>& experiment_keys(const std::string& experiment);
const std::vector<std::string>& experiment_names();

/// Parse a flat "key: value" document (also accepts "key = value"; '#'
/// starts a comment). Duplicate keys are rejected with both line numbers,
/// unknown keys and out-of-range values with their line. Missing keys take
/// the documented defaults.
RunConfig load_config(const std::string& path, const std::string& experiment);
RunConfig parse_config_text(const std::string& text, const std::string& experiment);

}  // namespace magq

#endif
