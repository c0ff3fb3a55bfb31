#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "codemix/provider_cache.hpp"
#include "codemix/providers.hpp"
#include "json.hpp"

namespace codemix {

/// Provider configuration file: a JSON document routing each task to a
/// backend per language pair, with "*" as the fallback pair key.
///
///   {"tasks": {"translate": {"en-hi": {"backend": "http_json", ...},
///                            "*":     {"backend": "mock", "tables": "t.json"}}}}
///
/// Backends: openai_chat, http_json, mock, hash_embed, failing.
class ProviderConfig {
  public:
    static ProviderConfig load(const std::filesystem::path& path);
    static ProviderConfig from_json(const nlohmann::json& doc,
                                    const std::filesystem::path& base_dir);

    /// The backend document for a task and pair; exact pair key wins over
    /// "*". Throws FormatError when neither is configured.
    const nlohmann::json& lookup(const std::string& task, const LanguagePair& pair) const;

    /// Directory for resolving relative table paths.
    const std::filesystem::path& base_dir() const { return base_dir_; }

  private:
    std::map<std::string, std::map<std::string, nlohmann::json>> tasks_;
    std::filesystem::path base_dir_;
};

enum class RunMode { Record, Replay, Live };

RunMode run_mode_from_string(std::string_view name);

/// Assemble the provider set for one run.
///  - Replay: the cache answers everything; the transport is a failing stub,
///    so a cache miss surfaces instead of a network call.
///  - Record: backends are built from the config and every exchange is
///    appended to the cache.
///  - Live: backends only, no cache file.
ProviderSet make_providers(const ProviderConfig& config, const LanguagePair& pair, RunMode mode,
                           const std::optional<std::filesystem::path>& cache_path);

} // namespace codemix
