#pragma once

// Run manifests: one JSON file per CLI run carrying the resolved
// parameters, seeds, solver diagnostics, and content digests of every
// emitted data file, so each output is self-describing and reproducible.

#include <cstdint>
#include <string>

#include <json.hpp>

namespace hjc {

// FNV-1a 64-bit digest of a file's bytes, as a 16-digit lower-case hex
// string.  Used to fingerprint emitted CSVs in the manifest.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string fnv1a64_file_hex(const std::string& path);

// Serializes the manifest object with 2-space indentation; throws
// io_error on failure.
void write_json_file(const nlohmann::json& j, const std::string& path);

} // namespace hjc
