#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fmn {

/// Reproducibility record written next to every command's outputs: tool
/// version, command name, config snapshot, and content hashes of all input
/// and output files. Contains no timestamps, so identical reruns produce
/// identical manifests.
class Manifest {
 public:
  Manifest(std::string command, nlohmann::ordered_json config);

  void add_input(const std::string& path);
  void add_output(const std::string& path);   // hash computed at write time
  void add_note(const std::string& note);

  nlohmann::ordered_json to_json() const;
  void write(const std::string& path) const;

 private:
  std::string command_;
  nlohmann::ordered_json config_;
  std::vector<std::pair<std::string, std::string>> inputs_;  // path, hash
  std::vector<std::string> outputs_;
  std::vector<std::string> notes_;
};

}  // namespace fmn
