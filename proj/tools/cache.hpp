#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

// Content-addressed result store under $TUTTEBRAID_CACHE_DIR. Keys are full
// strings (canonical key + point); the file name is their FNV-1a hash and the
// stored key is compared on read, so a hash collision is only a miss.
class PersistentCache {
 public:
  static std::optional<PersistentCache> from_env() {
    const char* dir = std::getenv("TUTTEBRAID_CACHE_DIR");
    if (!dir || !*dir) return std::nullopt;
    return PersistentCache(dir);
  }

  std::optional<nlohmann::json> get(const std::string& key) const {
    std::ifstream in(path(key));
    if (!in) return std::nullopt;
    try {
      const auto j = nlohmann::json::parse(in);
      if (j.value("key", "") == key && j.contains("value")) return j.at("value");
    } catch (const nlohmann::json::exception&) {
    }
    return std::nullopt;
  }

  void put(const std::string& key, const nlohmann::json& value) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    const auto final_path = path(key);
    auto tmp = final_path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) return;  // an unwritable cache is not an error
      out << nlohmann::json{{"key", key}, {"value", value}}.dump();
    }
    std::filesystem::rename(tmp, final_path, ec);
  }

 private:
  explicit PersistentCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path(const std::string& key) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : key) h = (h ^ c) * 0x100000001b3ULL;
    std::ostringstream name;
    name << std::hex << h << ".json";
    return dir_ / name.str();
  }

  std::filesystem::path dir_;
};
