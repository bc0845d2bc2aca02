#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avcyc/bigint.hpp"

namespace avcyc::ingest {

/// One published isogeny class. `poly` is constant-first as published;
/// `high_first` is the monic-first form used everywhere else.
struct ExternalClassRecord {
  std::string label;
  Int q;
  Int p;
  unsigned r = 1;
  unsigned g = 1;
  std::vector<Int> poly;
  std::vector<Int> high_first;
  std::optional<bool> is_ordinary_claimed;
  std::optional<Int> point_count_claimed;

  friend bool operator==(const ExternalClassRecord&, const ExternalClassRecord&) = default;
};

struct RejectedLine {
  std::size_t line;  ///< 1-based
  std::string message;
};

struct LoadResult {
  std::vector<ExternalClassRecord> records;
  std::vector<RejectedLine> rejected;
};

/// JSON-lines, one object per line, blank lines ignored. Malformed lines are
/// reported and skipped. Throws Io for an unreadable file, Parse when no
/// line survives.
LoadResult load_fixture(const std::filesystem::path& path);
LoadResult parse_fixture(std::string_view text);

/// Canonical single-line serialization, the inverse of the line parser.
std::string to_json_line(const ExternalClassRecord& rec);

struct RemoteQuery {
  Int q;
  unsigned g = 1;
};

struct RemoteConfig {
  bool network_enabled = false;
  std::string endpoint;                  ///< http://host[:port]/path
  std::filesystem::path cache_dir;       ///< empty: no caching
  int timeout_seconds = 10;
};

/// Endpoint from AVCYC_LMFDB_ENDPOINT, cache from AVCYC_CACHE_DIR. The
/// network stays disabled unless the caller enables it.
RemoteConfig remote_config_from_env();

std::filesystem::path cache_file(const RemoteConfig& cfg, const RemoteQuery& query);

/// GET endpoint?q=..&g=.. returning a JSON array of records, or an object
/// with a "records" array. A cached file is used when present; a fresh
/// response is written to the cache atomically. Throws Capability when the
/// network is disabled, Network on transport failure or a non-200 status,
/// Parse on a malformed body (the cache is left untouched in both cases).
std::vector<ExternalClassRecord> fetch_remote(const RemoteQuery& query, const RemoteConfig& cfg);

/// Records from a JSON body as served by the endpoint.
std::vector<ExternalClassRecord> parse_response(std::string_view body);

struct Mismatch {
  std::string label;
  std::string field;  ///< "is_ordinary" or "point_count"
  std::string claimed;
  std::string computed;
};

struct CrossValidation {
  std::size_t records = 0;
  std::size_t fields_compared = 0;
  std::vector<Mismatch> mismatches;
  /// Deterministic JSON rendering.
  std::string to_json() const;
};

CrossValidation cross_validate(const std::vector<ExternalClassRecord>& records);

}  // namespace avcyc::ingest
