#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace fnls {

using json = nlohmann::json;

/// Run configuration: TOML-syntax sections [symbol], [grid], [time],
/// [nonlinearity], [data], [probe], [scan] plus a top-level seed, parsed
/// into a JSON object.  Unknown sections or keys are hard errors.
class RunConfig {
public:
    RunConfig();

    static RunConfig from_file(const std::string& path);
    static RunConfig from_string(const std::string& text);

    /// Apply a CLI override "section.key" (or "seed") from its string form.
    void override_value(const std::string& dotted_key, const std::string& value);

    double get_double(const std::string& section, const std::string& key, double def) const;
    long get_long(const std::string& section, const std::string& key, long def) const;
    bool get_bool(const std::string& section, const std::string& key, bool def) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& def) const;
    std::vector<double> get_array(const std::string& section, const std::string& key,
                                  const std::vector<double>& def) const;
    uint64_t seed() const;

    /// Effective configuration (file values, overrides, and the defaults of
    /// every key read so far) for the summary's resolved_config echo.
    const json& resolved() const { return resolved_; }

private:
    static void check_known(const std::string& section, const std::string& key);
    const json* find(const std::string& section, const std::string& key) const;

    json values_;
    mutable json resolved_;
};

} // namespace fnls
