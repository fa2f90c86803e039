#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace datamap {

// 64-bit FNV-1a over raw bytes. Used for content addressing in the
// conversion cache and for configuration digests in the run manifest.
constexpr std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// 16 lowercase hex characters.
std::string hex64(std::uint64_t value);

std::string digest(std::string_view bytes);

std::string digest_file(const std::filesystem::path& path);

// Whole file as a byte string. Throws datamap::Error when unreadable.
std::string read_file(const std::filesystem::path& path);

// Atomic write: temp file in the target directory, then rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace datamap
