#pragma once

#include "dyncoh/group.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dyncoh {

// Versioned per-diagram JSON cache: roots, generator permutations and the
// class table of W. Invalidated on version or diagram-key mismatch.
struct CacheEntry {
  std::string file;
  std::string name;
  std::string diagram_key;
  long long group_order = 0;
};

std::string group_cache_json(const GroupData& g);

// Write alongside existing entries; returns the file path.
std::string cache_store(const GroupData& g, const std::string& dir);

// nullptr on miss, version skew, or key mismatch.
std::unique_ptr<GroupData> cache_load(const CoxeterDiagram& d, const std::string& dir,
                                      const GroupConfig& cfg = {});

std::vector<CacheEntry> cache_info(const std::string& dir);
int cache_clear(const std::string& dir);  // number of entries removed

}  // namespace dyncoh
