#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "codemix/providers.hpp"
#include "json.hpp"

namespace codemix {

std::string sha256_hex(std::string_view data);

enum class CacheMode { Record, Replay };

/// One cached request/response pair. The hash is a pure function of
/// (provider_id, canonical request); timestamp and config are audit-only.
struct ProviderRecord {
    std::string provider_id;
    std::string request_hash;
    nlohmann::json request;
    nlohmann::json response;
    std::string timestamp;
    nlohmann::json config; // backend/model settings at record time
};

/// Append-only JSONL store of ProviderRecords. Replay lookups are served
/// fully from memory; when the same request was recorded more than once the
/// newest response wins. Appends are serialized.
class RecordStore {
  public:
    /// Load an existing cache file; errors if it does not exist.
    static std::shared_ptr<RecordStore> open_replay(const std::filesystem::path& path);

    /// Open (creating if needed) a cache file for appending. Existing
    /// records are loaded so lookups keep working in mixed flows.
    static std::shared_ptr<RecordStore> open_record(const std::filesystem::path& path);

    /// Sorted-key, NFC-normalized form of a request document.
    static nlohmann::json canonicalize(const nlohmann::json& request);

    static std::string request_hash(const std::string& provider_id,
                                    const nlohmann::json& canonical_request);

    std::optional<nlohmann::json> lookup(const std::string& provider_id,
                                         const nlohmann::json& request) const;

    /// Record a response; fills hash and timestamp.
    void append(const std::string& provider_id, const nlohmann::json& request,
                const nlohmann::json& response, nlohmann::json config = {});

    size_t size() const;
    std::vector<ProviderRecord> records() const;

  private:
    RecordStore() = default;
    void load(const std::filesystem::path& path, bool must_exist);

    mutable std::mutex mutex_;
    std::filesystem::path path_;
    bool writable_ = false;
    std::unordered_map<std::string, nlohmann::json> responses_; // hash -> newest response
    std::vector<ProviderRecord> records_;
};

/// Wrap a provider set with record/replay behaviour. In replay mode the
/// inner providers are never touched; misses raise CacheMiss. In record
/// mode every call is forwarded and its response appended to the store,
/// together with the per-task backend settings (keyed by provider id) for
/// audit.
ProviderSet cached_providers(const ProviderSet& inner, std::shared_ptr<RecordStore> store,
                             CacheMode mode,
                             std::map<std::string, nlohmann::json> audit_configs = {});

} // namespace codemix
