#include "fmn/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fmn/errors.hpp"
#include "fmn/hash.hpp"

namespace fmn {

std::string fnv1a64_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

std::string hash_file_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot hash missing file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return fnv1a64_hex(buf.str());
}

Manifest::Manifest(std::string command, nlohmann::ordered_json config)
    : command_(std::move(command)), config_(std::move(config)) {}

void Manifest::add_input(const std::string& path) {
  inputs_.push_back({path, hash_file_hex(path)});
}

void Manifest::add_output(const std::string& path) { outputs_.push_back(path); }

void Manifest::add_note(const std::string& note) { notes_.push_back(note); }

nlohmann::ordered_json Manifest::to_json() const {
  nlohmann::ordered_json doc;
  doc["tool"] = "fmn";
  doc["version"] = FMN_VERSION;
  doc["command"] = command_;
  doc["config"] = config_;
  doc["inputs"] = nlohmann::ordered_json::array();
  for (const auto& [path, hash] : inputs_) {
    doc["inputs"].push_back({{"path", path}, {"fnv1a64", hash}});
  }
  doc["outputs"] = nlohmann::ordered_json::array();
  for (const auto& path : outputs_) {
    doc["outputs"].push_back({{"path", path}, {"fnv1a64", hash_file_hex(path)}});
  }
  if (!notes_.empty()) doc["notes"] = notes_;
  return doc;
}

void Manifest::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write manifest: " + path);
  out << to_json().dump(2) << "\n";
}

}  // namespace fmn
