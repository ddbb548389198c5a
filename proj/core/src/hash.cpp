#include "bp3ksest/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace bpks {

Digest sha256(const uint8_t* data, size_t len) {
    Digest out;
    unsigned int out_len = 0;
    if (EVP_Digest(data, len, out.data(), &out_len, EVP_sha256(), nullptr) != 1 || out_len != 32)
        throw std::runtime_error("SHA-256 failed");
    return out;
}

Digest sha256(const Bytes& data) { return sha256(data.data(), data.size()); }

}  // namespace bpks
