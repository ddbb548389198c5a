#ifndef BP3KSEST_HASH_HPP
#define BP3KSEST_HASH_HPP

#include <array>

#include "bp3ksest/bytes.hpp"

namespace bpks {

using Digest = std::array<uint8_t, 32>;

Digest sha256(const uint8_t* data, size_t len);
Digest sha256(const Bytes& data);

}  // namespace bpks

#endif
