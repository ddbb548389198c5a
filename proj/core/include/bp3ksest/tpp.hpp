#ifndef BP3KSEST_TPP_HPP
#define BP3KSEST_TPP_HPP

#include <array>

#include "bp3ksest/algebra.hpp"
#include "bp3ksest/paillier.hpp"

namespace bpks {

// Two-party modulo-arithmetic exchange. A user holding
// (u0,u1,u2,u3,r1',r2') and a responder holding (t0..t4, rhat1, rhat2)
// jointly compute, with only the user able to decrypt intermediate values:
//   x0 = rhat1*r1'*t1*t2 + rhat2*r2'*t3*t4 + u0   (mod p)
//   x1 = -(u3/r1')*t0*t2 + u1                     (mod p)
//   x2 = -(u3/r1')*t0*t1 + u2                     (mod p)
// Three messages: the user sends six ciphertexts, the responder returns
// three masked ciphertexts, the user decrypts and returns x0,x1,x2 in clear.
// All plaintext arithmetic stays below N (asserted at key generation), and
// the responder's secrets are hidden behind additive masks m*p with m drawn
// from [0, 2^80).

struct TppUserState {
    Scalar u0, u1, u2;
    Scalar r1p, r2p;  // r1', r2' (nonzero)
    Scalar u3;        // nonzero
    Scalar q;         // u3 / r1'
    const PaillierKeyPair* paillier = nullptr;

    static TppUserState create(const PaillierKeyPair& kp, const Scalar& u0, const Scalar& u1,
                               const Scalar& u2, const Scalar& r1p, const Scalar& r2p,
                               const Scalar& u3);
    // Draws u0,u1,u2 then r1',r2' then u3 (nonzero where required).
    static TppUserState random(const PaillierKeyPair& kp, Drbg& rng);
};

struct TppMsg1 {
    HomCiphertext e_r1p, e_r2p, e_q, e_u0, e_u1, e_u2;
    PaillierPublicKey pk;

    Bytes encode() const;
    static TppMsg1 decode(const Bytes& in);
};

struct TppMsg2 {
    HomCiphertext e0, e1, e2;

    Bytes encode() const;
    static TppMsg2 decode(const Bytes& in, const PaillierPublicKey& pk);
};

struct TppMsg3 {
    Scalar x0, x1, x2;

    Bytes encode() const;
    static TppMsg3 decode(const Bytes& in);
};

TppMsg1 tpp_round1_user(const TppUserState& state, Drbg& rng);

// Explicit-mask variant; masks must lie in [0, 2^80).
TppMsg2 tpp_round2_with_masks(const TppMsg1& m1, const std::array<Scalar, 5>& t,
                              const Scalar& rhat1, const Scalar& rhat2,
                              const std::array<mpz_class, 3>& masks, Drbg& rng);
TppMsg2 tpp_round2_tgc(const TppMsg1& m1, const std::array<Scalar, 5>& t, const Scalar& rhat1,
                       const Scalar& rhat2, Drbg& rng);

TppMsg3 tpp_round3_user(const TppMsg2& m2, const TppUserState& state);

}  // namespace bpks

#endif
