// Copyright 2026 The paramine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PARAMINE_UTIL_IO_HPP_
#define PARAMINE_UTIL_IO_HPP_

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "paramine/error.hpp"
#include "paramine/util/hash.hpp"

namespace paramine {

using Json = nlohmann::json;
namespace fs = std::filesystem;

inline std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes via a sibling temp file and rename, so readers never observe a
// partially written artifact.
inline void AtomicWriteFile(const fs::path &path, const std::string &content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

inline std::string HashFileContent(const fs::path &path) {
  return HexDigest(Fnv1a64(ReadFile(path)));
}

// Calls fn(line_number, line) for each line; line numbers start at 1.
inline void ForEachLine(const fs::path &path,
                        const std::function<void(size_t, const std::string &)> &fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file: " + path.string());
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fn(n, line);
  }
}

// One JSON object per line, keys sorted (nlohmann's default object order),
// so serialized output is byte-stable.
inline std::string ToJsonLines(const std::vector<Json> &records) {
  std::string out;
  for (const Json &r : records) {
    out += r.dump(-1, ' ', false, Json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

inline std::vector<Json> ReadJsonLines(const fs::path &path) {
  std::vector<Json> records;
  ForEachLine(path, [&](size_t n, const std::string &line) {
    if (line.find_first_not_of(" \t") == std::string::npos) return;
    try {
      records.push_back(Json::parse(line));
    } catch (const Json::exception &e) {
      throw DataError(path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  });
  return records;
}

}  // namespace paramine

#endif  // PARAMINE_UTIL_IO_HPP_
