#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qmem::harness {

using Json = nlohmann::ordered_json;

/// Fully resolved settings for one run. `values` holds every key the
/// experiment accepts; nothing outside that key set can get in.
struct ExperimentConfig {
    std::string experiment_id;
    Json values = Json::object();
    bool full = false;
    int workers = 1;

    int get_int(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<int> get_ints(const std::string& key) const;
    /// 0 .. get_int(key) - 1.
    std::vector<std::uint64_t> seed_list(const std::string& key = "seeds") const;
};

/// Starts from `defaults`, applies `full_overrides` when `full` is set, then
/// the user's overrides. Any key absent from `defaults` is rejected, as is a
/// value whose JSON type differs from the default's.
ExperimentConfig resolve_config(std::string_view id, const Json& defaults, const Json& full_overrides,
                                const Json& overrides, bool full, int workers);

/// "key=value"; the value is read as JSON when it parses, else as a string.
Json parse_assignment(std::string_view text);

/// JSON object of overrides from a file.
Json load_overrides(const std::filesystem::path& path);

/// $QMEM_OUT when set and non-empty, else "results".
std::filesystem::path default_output_dir();

}  // namespace qmem::harness
