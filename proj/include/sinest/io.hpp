#pragma once

#include <string>
#include <vector>

#include "sinest/model.hpp"

namespace sinest {

/// Headerless little-endian IEEE-754 doubles. Errors carry the path and,
/// for malformed input, the offending byte offset.
void write_raw_f64(const std::string& path, std::span<const double> samples);
std::vector<double> read_raw_f64(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace sinest
