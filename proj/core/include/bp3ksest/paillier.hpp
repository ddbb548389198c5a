#ifndef BP3KSEST_PAILLIER_HPP
#define BP3KSEST_PAILLIER_HPP

#include <gmpxx.h>

#include <memory>

#include "bp3ksest/bytes.hpp"
#include "bp3ksest/rng.hpp"

namespace bpks {

// Additively homomorphic encryption over Z_N:
//   Enc(m; r) = (1 + mN) * r^N mod N^2
//   Enc(a) * Enc(b) decrypts to a + b (mod N)
//   Enc(a)^k decrypts to k*a (mod N)

struct PaillierPublicKey {
    mpz_class n;
    mpz_class n2;

    bool operator==(const PaillierPublicKey& o) const { return n == o.n; }
};

struct HomCiphertext {
    mpz_class value;  // in [0, N^2)
    std::shared_ptr<const PaillierPublicKey> pk;
};

class PaillierKeyPair {
public:
    // bits is the modulus size; requires bits >= 2048. Asserts the masking
    // headroom bound N > 3 * 2^80 * p^2 needed by the TPP exchange.
    static PaillierKeyPair generate(unsigned bits, Drbg& rng);

    const std::shared_ptr<const PaillierPublicKey>& pk() const { return pk_; }

    HomCiphertext encrypt(const mpz_class& m, Drbg& rng) const;
    mpz_class decrypt(const HomCiphertext& c) const;

private:
    std::shared_ptr<const PaillierPublicKey> pk_;
    mpz_class lambda_;
    mpz_class mu_;
};

HomCiphertext encrypt(const PaillierPublicKey& pk, const mpz_class& m, Drbg& rng);

// Both operands must be under the same public key; mismatch throws.
HomCiphertext hom_add(const HomCiphertext& a, const HomCiphertext& b);
HomCiphertext hom_scale(const HomCiphertext& c, const mpz_class& k);

}  // namespace bpks

#endif
