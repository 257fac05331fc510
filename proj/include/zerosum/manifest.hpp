#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <json.hpp>
#include <openssl/evp.h>

#include "zerosum/error.hpp"

namespace zerosum {

inline constexpr const char* kToolVersion = "1.0.0";

/// Lower-case hex SHA-256 of a byte string.
inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &size, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < size; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

inline std::string utc_timestamp(std::chrono::system_clock::time_point t = std::chrono::system_clock::now()) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Record of one CLI run: what was asked, with which configuration, and a
/// content hash for every report it wrote.
struct RunManifest {
  struct Entry {
    std::string task;
    std::string outcome;
    std::string file;  // empty when the report went to stdout
    std::string sha256;
    int exit_code = 0;
  };

  std::string tool_version = kToolVersion;
  std::vector<std::string> command_line;
  nlohmann::json config = nlohmann::json::object();
  std::string started;
  std::string finished;
  std::vector<Entry> entries;

  void add(std::string task, std::string outcome, std::string file, const std::string& content, int exit_code) {
    entries.push_back({std::move(task), std::move(outcome), std::move(file), sha256_hex(content), exit_code});
  }

  nlohmann::json to_json() const {
    nlohmann::json tasks = nlohmann::json::array();
    for (const auto& e : entries) {
      tasks.push_back({{"task", e.task},
                       {"outcome", e.outcome},
                       {"file", e.file},
                       {"sha256", e.sha256},
                       {"exit_code", e.exit_code}});
    }
    return {{"tool_version", tool_version}, {"command_line", command_line}, {"config", config},
            {"started", started},           {"finished", finished},         {"tasks", tasks}};
  }
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error("failed writing " + path);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace zerosum
