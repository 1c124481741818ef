#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cstrength {

// Error taxonomy, mapped to CLI exit codes by the front end:
// IoError -> 2, NumericError -> 3, InfeasibleError -> 4.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// FNV-1a 64-bit, used for dataset checksums in run manifests.
inline std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t file_checksum(const std::string& path);

// 6 significant digits for human-facing output, full precision for CSV.
std::string sig6(double v);
std::string full_prec(double v);

}  // namespace cstrength
