#include "obtf/cache.hpp"

#include <fstream>
#include <string>

namespace obtf {

std::vector<CensusRecord> load_cache(const std::filesystem::path& path) {
  std::vector<CensusRecord> records;
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return records;
  std::ifstream in(path);
  if (!in) throw CacheError("cannot read cache " + path.string());
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw CacheError(path.string() + ":" + std::to_string(number) + ": corrupt record: " + e.what());
    }
  }
  return records;
}

void append_record(const std::filesystem::path& path, const CensusRecord& record) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw CacheError("cannot append to cache " + path.string());
  out << to_json(record).dump() << '\n';
  if (!out) throw CacheError("write to cache " + path.string() + " failed");
}

std::optional<CensusRecord> find_cached(const std::vector<CensusRecord>& records, Quantity q, int n,
                                        std::optional<Convention> c, Method m) {
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    if (it->quantity == q && it->n == n && it->convention == c && it->method == m &&
        !it->checksum.empty()) {
      return *it;
    }
  }
  return std::nullopt;
}

}  // namespace obtf
