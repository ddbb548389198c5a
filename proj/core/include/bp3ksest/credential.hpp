#ifndef BP3KSEST_CREDENTIAL_HPP
#define BP3KSEST_CREDENTIAL_HPP

#include "bp3ksest/algebra.hpp"

namespace bpks {

struct CaKeyPair {
    Scalar x, y;
    GroupElem X, Y;

    static CaKeyPair generate(const SystemParams& params, Drbg& rng);
};

struct CaPublicKey {
    GroupElem X, Y;

    Bytes encode() const;
    static CaPublicKey decode(const Bytes& in);
};

// CL triple on the holder's secret exponent x_u:
//   a = g^{r_u}, b = a^y, c = a^x * Y_u^{r_u*x*y}
struct Credential {
    GroupElem a, b, c;

    Bytes encode() const;
    static Credential decode(const Bytes& in);
};

// Blinded presentation (a^{r'}, b^{r'}, c^{r'*r}).
struct RandomizedCredential {
    GroupElem a_t, b_t, c_hat;

    Bytes encode() const;
    static RandomizedCredential decode(const Bytes& in);
};

Credential issue(const CaKeyPair& sk, const GroupElem& Yu, const SystemParams& params, Drbg& rng);

// r and r' must be nonzero.
RandomizedCredential randomize(const Credential& cred, const Scalar& r, const Scalar& r_prime);

// Pairing half of presentation verification: e(a~, Y) = e(g, b~) with the
// all-identity triple rejected.
bool show_verify(const RandomizedCredential& rc, const CaPublicKey& pk,
                 const SystemParams& params);

}  // namespace bpks

#endif
