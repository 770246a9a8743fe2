#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

#include "obtf/census.hpp"

namespace obtf {

/// Unreadable, unwritable or corrupt cache file.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Append-only JSON-lines file of CensusRecords. A missing file is an empty
/// cache.
std::vector<CensusRecord> load_cache(const std::filesystem::path& path);
void append_record(const std::filesystem::path& path, const CensusRecord& record);

/// Latest record for the key that carries a checksum.
std::optional<CensusRecord> find_cached(const std::vector<CensusRecord>& records, Quantity q, int n,
                                        std::optional<Convention> c, Method m);

}  // namespace obtf
