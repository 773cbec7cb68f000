#include "dyncoh/cache.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace dyncoh {

namespace {

constexpr int kCacheVersion = 1;

std::string key_hash(const std::string& key) {
  // FNV-1a, printed as hex; only used to name files.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

std::string group_cache_json(const GroupData& g) {
  nlohmann::ordered_json j;
  j["version"] = kCacheVersion;
  j["diagram_key"] = g.diagram().canonical_key();
  j["name"] = g.diagram().name();
  j["order"] = g.size();
  j["nroots"] = g.num_roots();
  j["simple_roots"] = g.simple_roots();
  j["roots"] = g.root_strings();
  j["generators"] = g.generator_perms();

  const auto& full = g.full_view();
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const auto& c : full.classes()) {
    nlohmann::ordered_json e;
    std::ostringstream w;
    for (int v : full.lex_min_word(c.rep)) w << v << ".";
    e["rep_word"] = w.str();
    e["size"] = c.size;
    e["centralizer_order"] = c.centralizer_order;
    e["epsilon_trivial"] = c.epsilon_trivial;
    e["label"] = c.label.text();
    classes.push_back(std::move(e));
  }
  j["classes"] = std::move(classes);
  return j.dump(1);
}

std::string cache_store(const GroupData& g, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::string path = dir + "/" + key_hash(g.diagram().canonical_key()) + ".json";
  std::ofstream out(path);
  out << group_cache_json(g);
  return path;
}

std::unique_ptr<GroupData> cache_load(const CoxeterDiagram& d, const std::string& dir,
                                      const GroupConfig& cfg) {
  std::string path = dir + "/" + key_hash(d.canonical_key()) + ".json";
  std::ifstream in(path);
  if (!in) return nullptr;
  nlohmann::json j;
  try {
    in >> j;
    if (j.at("version").get<int>() != kCacheVersion) return nullptr;
    if (j.at("diagram_key").get<std::string>() != d.canonical_key()) return nullptr;
    GroupData::RawBackend raw;
    raw.nroots = j.at("nroots").get<int>();
    raw.simple_root = j.at("simple_roots").get<std::vector<int>>();
    raw.gen_perm = j.at("generators").get<std::vector<std::vector<int>>>();
    raw.root_str = j.at("roots").get<std::vector<std::string>>();
    return GroupData::build_from_backend(d, std::move(raw), cfg);
  } catch (const Error&) {
    return nullptr;
  } catch (const std::exception&) {
    return nullptr;
  }
}

std::vector<CacheEntry> cache_info(const std::string& dir) {
  std::vector<CacheEntry> out;
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& ent : std::filesystem::directory_iterator(dir)) {
    if (ent.path().extension() != ".json") continue;
    std::ifstream in(ent.path());
    nlohmann::json j;
    try {
      in >> j;
      CacheEntry e;
      e.file = ent.path().filename().string();
      e.name = j.value("name", "");
      e.diagram_key = j.value("diagram_key", "");
      e.group_order = j.value("order", 0LL);
      out.push_back(std::move(e));
    } catch (...) {
    }
  }
  std::sort(out.begin(), out.end(), [](const CacheEntry& a, const CacheEntry& b) { return a.file < b.file; });
  return out;
}

int cache_clear(const std::string& dir) {
  int n = 0;
  if (!std::filesystem::is_directory(dir)) return 0;
  for (const auto& ent : std::filesystem::directory_iterator(dir))
    if (ent.path().extension() == ".json" && std::filesystem::remove(ent.path())) ++n;
  return n;
}

}  // namespace dyncoh
