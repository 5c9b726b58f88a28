#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "bridgekit/interest_model.hpp"

namespace bridgekit::testing {

inline std::filesystem::path fixture_dir() { return BRIDGEKIT_FIXTURE_DIR; }
inline std::filesystem::path golden_dir() { return BRIDGEKIT_GOLDEN_DIR; }
inline std::filesystem::path data_dir() { return BRIDGEKIT_TEST_DATA_DIR; }

inline const TextResources& resources() {
  static const TextResources r = TextResources::load(data_dir());
  return r;
}

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("bridgekit-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace bridgekit::testing
