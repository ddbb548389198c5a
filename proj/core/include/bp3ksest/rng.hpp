#ifndef BP3KSEST_RNG_HPP
#define BP3KSEST_RNG_HPP

#include <gmpxx.h>

#include <string_view>

#include "bp3ksest/hash.hpp"

namespace bpks {

// Deterministic byte stream: SHA-256 in counter mode over a 32-byte key.
// The same seed yields the same draw sequence on every platform, which is
// what makes seeded scenario runs reproducible bit-for-bit.
class Drbg {
public:
    explicit Drbg(uint64_t seed);
    explicit Drbg(const Bytes& seed);

    // Independent child stream; children with distinct labels never overlap.
    Drbg fork(std::string_view label) const;

    void fill(uint8_t* out, size_t len);
    Bytes bytes(size_t len);
    uint64_t u64();

    // Uniform integer in [0, bound) via rejection sampling. bound > 0.
    mpz_class below(const mpz_class& bound);
    // Uniform integer in [1, bound).
    mpz_class below_nonzero(const mpz_class& bound);

private:
    explicit Drbg(const Digest& key) : key_(key) {}
    Digest key_;
    uint64_t counter_ = 0;
    Digest block_{};
    size_t block_used_ = 32;  // forces refill on first draw
};

}  // namespace bpks

#endif
