#include "qmem/harness/config.hpp"

#include <cstdlib>

#include "qmem/error.hpp"
#include "qmem/harness/io.hpp"

namespace qmem::harness {
namespace {

bool same_kind(const Json& a, const Json& b) {
    if (a.is_number() && b.is_number()) {
        // integers may not silently become fractions
        return !(a.is_number_integer() && !b.is_number_integer());
    }
    return a.type() == b.type();
}

std::string known_keys(const Json& defaults) {
    std::string out;
    for (auto it = defaults.begin(); it != defaults.end(); ++it) {
        if (!out.empty()) out += ", ";
        out += it.key();
    }
    return out.empty() ? "(none)" : out;
}

const Json& lookup(const ExperimentConfig& c, const std::string& key) {
    if (!c.values.contains(key)) {
        throw InvalidArgument(c.experiment_id + ": missing config key '" + key + "'");
    }
    return c.values.at(key);
}

}  // namespace

int ExperimentConfig::get_int(const std::string& key) const { return lookup(*this, key).get<int>(); }

double ExperimentConfig::get_double(const std::string& key) const { return lookup(*this, key).get<double>(); }

std::vector<double> ExperimentConfig::get_doubles(const std::string& key) const {
    return lookup(*this, key).get<std::vector<double>>();
}

std::vector<int> ExperimentConfig::get_ints(const std::string& key) const {
    return lookup(*this, key).get<std::vector<int>>();
}

std::vector<std::uint64_t> ExperimentConfig::seed_list(const std::string& key) const {
    const int n = get_int(key);
    std::vector<std::uint64_t> out;
    for (int i = 0; i < n; ++i) out.push_back(static_cast<std::uint64_t>(i));
    return out;
}

ExperimentConfig resolve_config(std::string_view id, const Json& defaults, const Json& full_overrides,
                                const Json& overrides, bool full, int workers) {
    if (!overrides.is_object()) {
        throw InvalidArgument("config overrides must be a JSON object");
    }
    ExperimentConfig c;
    c.experiment_id = std::string(id);
    c.values = defaults;
    c.full = full;
    c.workers = workers < 1 ? 1 : workers;
    auto apply = [&](const Json& layer) {
        for (auto it = layer.begin(); it != layer.end(); ++it) {
            if (!defaults.contains(it.key())) {
                throw InvalidArgument(std::string(id) + ": unknown config key '" + it.key() +
                                      "' (accepted: " + known_keys(defaults) + ")");
            }
            if (!same_kind(defaults.at(it.key()), it.value())) {
                throw InvalidArgument(std::string(id) + ": config key '" + it.key() + "' expects " +
                                      defaults.at(it.key()).type_name() + ", got " + it.value().dump());
            }
            c.values[it.key()] = it.value();
        }
    };
    if (full) apply(full_overrides);
    apply(overrides);
    for (auto it = c.values.begin(); it != c.values.end(); ++it) {
        if (it.value().is_number_integer() && it.value().get<long long>() < 0) {
            throw InvalidArgument(std::string(id) + ": config key '" + it.key() + "' must be non-negative");
        }
    }
    return c;
}

Json parse_assignment(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw InvalidArgument("expected key=value, got '" + std::string(text) + "'");
    }
    const std::string key(text.substr(0, eq));
    const std::string raw(text.substr(eq + 1));
    Json value;
    try {
        value = Json::parse(raw);
    } catch (const nlohmann::json::exception&) {
        value = raw;
    }
    Json out = Json::object();
    out[key] = value;
    return out;
}

Json load_overrides(const std::filesystem::path& path) {
    const std::string text = read_text(path);
    try {
        Json j = Json::parse(text);
        if (!j.is_object()) {
            throw InvalidArgument(path.string() + ": config file must hold a JSON object");
        }
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(path.string() + ": " + e.what());
    }
}

std::filesystem::path default_output_dir() {
    const char* env = std::getenv("QMEM_OUT");
    if (env != nullptr && *env != '\0') {
        return env;
    }
    return "results";
}

}  // namespace qmem::harness
