// Small I/O helpers shared by snapshot and experiment writers: exact
// (shortest round-trip) decimal formatting, whole-file read/write with
// path-carrying errors, and SHA-256 for output manifests.
#pragma once

#include <string>

namespace gld::io {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

// Throws std::runtime_error naming the path on failure.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Lowercase hex SHA-256 of the given bytes.
std::string sha256_hex(const std::string& bytes);

}  // namespace gld::io
