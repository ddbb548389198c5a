#include "bp3ksest/paillier.hpp"

#include <stdexcept>

#include "bp3ksest/algebra.hpp"

namespace bpks {

namespace {

mpz_class random_prime(unsigned bits, Drbg& rng) {
    mpz_class start = rng.below(mpz_class(1) << bits);
    mpz_setbit(start.get_mpz_t(), bits - 1);
    mpz_setbit(start.get_mpz_t(), bits - 2);  // keeps the product at full width
    mpz_class p;
    mpz_nextprime(p.get_mpz_t(), start.get_mpz_t());
    return p;
}

}  // namespace

PaillierKeyPair PaillierKeyPair::generate(unsigned bits, Drbg& rng) {
    if (bits < 2048) throw std::invalid_argument("modulus must be at least 2048 bits");
    mpz_class p = random_prime(bits / 2, rng);
    mpz_class q;
    do {
        q = random_prime(bits / 2, rng);
    } while (q == p);

    PaillierKeyPair kp;
    auto pk = std::make_shared<PaillierPublicKey>();
    pk->n = p * q;
    pk->n2 = pk->n * pk->n;
    kp.pk_ = std::move(pk);

    mpz_class pm1 = p - 1, qm1 = q - 1;
    mpz_lcm(kp.lambda_.get_mpz_t(), pm1.get_mpz_t(), qm1.get_mpz_t());
    if (mpz_invert(kp.mu_.get_mpz_t(), kp.lambda_.get_mpz_t(), kp.pk_->n.get_mpz_t()) == 0)
        throw std::runtime_error("lambda not invertible");

    // masking headroom for the TPP exchange: N > 3 * 2^80 * p_group^2
    mpz_class bound = 3 * (mpz_class(1) << 80) * group_order() * group_order();
    if (kp.pk_->n <= bound) throw std::runtime_error("modulus too small for TPP masking");
    return kp;
}

HomCiphertext encrypt(const PaillierPublicKey& pk, const mpz_class& m, Drbg& rng) {
    if (m < 0 || m >= pk.n) throw std::invalid_argument("plaintext out of range");
    mpz_class r = rng.below_nonzero(pk.n);
    mpz_class c;
    mpz_powm(c.get_mpz_t(), r.get_mpz_t(), pk.n.get_mpz_t(), pk.n2.get_mpz_t());
    mpz_class gm = 1 + m * pk.n;
    c = c * gm;
    mpz_mod(c.get_mpz_t(), c.get_mpz_t(), pk.n2.get_mpz_t());
    return HomCiphertext{std::move(c), std::make_shared<PaillierPublicKey>(pk)};
}

HomCiphertext PaillierKeyPair::encrypt(const mpz_class& m, Drbg& rng) const {
    if (m < 0 || m >= pk_->n) throw std::invalid_argument("plaintext out of range");
    mpz_class r = rng.below_nonzero(pk_->n);
    mpz_class c;
    mpz_powm(c.get_mpz_t(), r.get_mpz_t(), pk_->n.get_mpz_t(), pk_->n2.get_mpz_t());
    mpz_class gm = 1 + m * pk_->n;
    c = c * gm;
    mpz_mod(c.get_mpz_t(), c.get_mpz_t(), pk_->n2.get_mpz_t());
    return HomCiphertext{std::move(c), pk_};
}

mpz_class PaillierKeyPair::decrypt(const HomCiphertext& c) const {
    if (!c.pk || c.pk->n != pk_->n) throw std::invalid_argument("ciphertext under a different key");
    mpz_class u;
    mpz_powm(u.get_mpz_t(), c.value.get_mpz_t(), lambda_.get_mpz_t(), pk_->n2.get_mpz_t());
    u -= 1;
    mpz_class l = u / pk_->n;
    l *= mu_;
    mpz_mod(l.get_mpz_t(), l.get_mpz_t(), pk_->n.get_mpz_t());
    return l;
}

HomCiphertext hom_add(const HomCiphertext& a, const HomCiphertext& b) {
    if (!a.pk || !b.pk || !(*a.pk == *b.pk))
        throw std::invalid_argument("ciphertexts under different keys");
    mpz_class v = a.value * b.value;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), a.pk->n2.get_mpz_t());
    return HomCiphertext{std::move(v), a.pk};
}

HomCiphertext hom_scale(const HomCiphertext& c, const mpz_class& k) {
    if (!c.pk) throw std::invalid_argument("ciphertext without a key");
    if (k < 0) throw std::invalid_argument("scale factor must be non-negative");
    mpz_class v;
    mpz_powm(v.get_mpz_t(), c.value.get_mpz_t(), k.get_mpz_t(), c.pk->n2.get_mpz_t());
    return HomCiphertext{std::move(v), c.pk};
}

}  // namespace bpks
