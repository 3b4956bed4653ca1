#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace semfl {

// FNV-1a, 64 bit. Used for content hashes in manifests and embedding
// provenance; stable across platforms and runs.
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

// Lowercase alphanumeric tokenization: maximal runs of [a-z0-9] after
// lowercasing, everything else is a separator.
std::vector<std::string> tokenize_lower(std::string_view text);

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Splits on '\n', keeping empty lines; a trailing newline does not produce
// an extra empty element.
std::vector<std::string> split_lines(std::string_view text);

// Percent-encodes characters that are unsafe in file names so that element
// ids can be used as on-disk keys. Bijective: '%' itself is encoded.
std::string sanitize_for_filename(std::string_view id);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

// Writes to <path>.tmp then renames, so interrupted runs never leave a
// half-written artifact behind.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);

std::uint64_t hash_file(const std::filesystem::path& path);

// Hash of a directory tree: FNV over the sorted (relative path, file hash)
// pairs of all regular files underneath.
std::uint64_t hash_path(const std::filesystem::path& path);
std::string hash_path_hex(const std::filesystem::path& path);

// Fisher-Yates with rng() % n index selection. std::shuffle's draw sequence
// is implementation-defined; this one is reproducible everywhere.
template <typename T, typename Rng>
void deterministic_shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace semfl
