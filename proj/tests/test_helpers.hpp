#ifndef BP3KSEST_TEST_HELPERS_HPP
#define BP3KSEST_TEST_HELPERS_HPP

#include "bp3ksest/scheme.hpp"

namespace bpks::test {

// Honest trapdoor-request statement/witness pair built from fresh secrets.
struct Pi2Fixture {
    CaKeyPair ca;
    CaPublicKey ca_pk;
    TracerKeyPair tr;
    Scalar xu;
    Pi2Statement stmt;
    Pi2Witness wit;
};

inline Pi2Fixture make_pi2_fixture(Drbg& rng, const SystemParams& params) {
    Pi2Fixture f;
    f.ca = CaKeyPair::generate(params, rng);
    f.ca_pk = CaPublicKey{f.ca.X, f.ca.Y};
    f.tr = keygen_tr(params, rng);
    f.xu = Scalar::random_nonzero(rng);

    Credential cred = issue(f.ca, params.g.pow(f.xu), params, rng);

    Scalar omega = Scalar::random(rng);
    Scalar u3 = Scalar::random_nonzero(rng);
    Scalar r0 = Scalar::random(rng);
    Scalar r = Scalar::random_nonzero(rng);
    Scalar r_prime = Scalar::random_nonzero(rng);

    GroupElem h_omega_prime = keyword_map(omega, params).pow(u3);
    GroupElem D1 = params.g.pow(omega) * f.tr.Yt.pow(r0);
    GroupElem D2 = params.g.pow(f.xu) * f.tr.Yt.pow(r0);
    GroupElem D3 = params.g.pow(r0);
    GroupElem D4 = params.g.pow(omega) * params.h1.pow(r);
    GroupElem D5 = params.g.pow(f.xu) * params.h2.pow(r);
    RandomizedCredential sigma = randomize(cred, r, r_prime);

    f.stmt = Pi2Statement::make(h_omega_prime, D1, D2, D3, D4, D5, sigma, f.tr.Yt, f.ca_pk, params);
    f.wit = Pi2Witness{omega, u3, r0, r, f.xu};
    return f;
}

}  // namespace bpks::test

#endif
