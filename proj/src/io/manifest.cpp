#include "rcplan/io/manifest.hpp"

#include <cstdio>

#include <openssl/evp.h>

#include "rcplan/error.hpp"
#include "rcplan/version.hpp"

namespace rcplan::io {

std::string to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["command"] = m.command;
  j["version"] = kVersion;
  j["parameters"] = m.parameters;
  if (m.seed) j["seed"] = *m.seed;
  j["input"] = {{"path", m.input_path}, {"sha256", m.input_sha256}};
  j["outputs"] = m.outputs;
  return j.dump(2) + "\n";
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw StructuralError("SHA-256 computation failed");
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace rcplan::io
