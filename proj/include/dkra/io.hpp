#pragma once

#include <string>
#include <vector>

namespace dkra {

// Shortest round-trip decimal form (std::to_chars): locale-independent,
// '.' decimal point, identical bytes for identical doubles.
std::string format_double(double v);

/// Writes text to path, throwing IoError on failure.
void write_file(const std::string& path, const std::string& text);

std::string read_file(const std::string& path);

}  // namespace dkra
