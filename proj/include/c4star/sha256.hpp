#ifndef C4STAR_SHA256_HPP
#define C4STAR_SHA256_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace c4star {

/// Lowercase hex SHA-256 digest of the given bytes. Used to check the
/// witness data files against their pinned checksum list.
std::string sha256_hex(std::string_view data);

} // namespace c4star

#endif
