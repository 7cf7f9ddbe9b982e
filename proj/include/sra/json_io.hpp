// JSON interchange format for automata.
#pragma once

#include <string>
#include <string_view>

#include "sra/sra.hpp"

namespace sra {

/// Canonical JSON text (2-space indent, fixed key order, trailing newline).
std::string to_json(const Sra& s);
/// Throws std::invalid_argument on malformed documents or unknown names.
Sra from_json(std::string_view text);

Sra load_sra(const std::string& path);
void save_sra(const std::string& path, const Sra& s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace sra
