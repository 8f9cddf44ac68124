#ifndef CORPUSFORGE_IO_HPP_
#define CORPUSFORGE_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace corpusforge {

std::vector<uint8_t> read_file_bytes(const std::filesystem::path& path);
std::string read_file_text(const std::filesystem::path& path);

// Writes to "<path>.tmp.<pid>" then renames over `path`, so readers never
// observe a partially written file.
void write_file_atomic(const std::filesystem::path& path,
                       std::span<const uint8_t> bytes);
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view text);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace corpusforge

#endif  // CORPUSFORGE_IO_HPP_
