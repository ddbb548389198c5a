#ifndef BP3KSEST_ZKP_HPP
#define BP3KSEST_ZKP_HPP

#include <optional>

#include "bp3ksest/algebra.hpp"
#include "bp3ksest/credential.hpp"

namespace bpks {

// Proof of knowledge of x_u with Y_u = g^{x_u}.
// Transcript hash: c = H1(Y_u || Y_u'), responses x_u_hat = x_u' - c*x_u.
struct Pi1Proof {
    GroupElem Yu_prime;
    Scalar c;
    Scalar xu_hat;

    Bytes encode() const;
    static Pi1Proof decode(const Bytes& in);
};

// forced_challenge is an interactive-mode hook used by tests to drive the
// sigma-protocol structure directly; the protocol path always derives the
// challenge by Fiat-Shamir.
Pi1Proof pi1_prove(const Scalar& xu, const GroupElem& Yu, const SystemParams& params, Drbg& rng,
                   std::optional<Scalar> forced_challenge = std::nullopt);
bool pi1_verify(const GroupElem& Yu, const Pi1Proof& proof, const SystemParams& params);
// Equation check only, with the challenge taken as given (interactive mode).
bool pi1_verify_interactive(const GroupElem& Yu, const Pi1Proof& proof,
                            const SystemParams& params);

// Statement for the trapdoor-request proof:
//   H(w)' = (g0*g1^w)^{u3},  D1 = g^w * Yt^{r0},  D2 = g^{x_u} * Yt^{r0},
//   D3 = g^{r0},  D4 = g^w * h1^r,  D5 = g^{x_u} * h2^r,
//   v_s^{1/r} = v_x * v_xy^{x_u}
// with v_s = e(g, c_hat), v_x = e(X, a~), v_xy = e(X, b~).
struct Pi2Statement {
    GroupElem h_omega_prime;
    GroupElem D1, D2, D3, D4, D5;
    RandomizedCredential sigma;
    GroupElem Yt;   // tracer public key
    CaPublicKey ca;

    // pairings derived from sigma and ca.X
    GtElem vs, vx, vxy;

    static Pi2Statement make(const GroupElem& h_omega_prime, const GroupElem& D1,
                             const GroupElem& D2, const GroupElem& D3, const GroupElem& D4,
                             const GroupElem& D5, const RandomizedCredential& sigma,
                             const GroupElem& Yt, const CaPublicKey& ca,
                             const SystemParams& params);
};

struct Pi2Witness {
    Scalar omega;
    Scalar u3;  // nonzero
    Scalar r0;
    Scalar r;   // nonzero, credential randomizer
    Scalar xu;
};

struct Pi2Proof {
    GroupElem h_omega_dprime;               // H(w)''
    GroupElem D1p, D2p, D3p, D4p, D5p;      // commitments
    GtElem vx_prime;
    Scalar c;
    Scalar t_hat, omega_hat, u3_hat, r0_hat, r_hat, xu_hat, k_hat;

    Bytes encode() const;
    static Pi2Proof decode(const Bytes& in);
};

// Checks every statement relation against the witness first and throws
// std::invalid_argument if any fails (or u3 = 0 or r = 0).
Pi2Proof pi2_prove(const Pi2Statement& stmt, const Pi2Witness& wit, const SystemParams& params,
                   Drbg& rng, std::optional<Scalar> forced_challenge = std::nullopt);
bool pi2_verify(const Pi2Statement& stmt, const Pi2Proof& proof, const SystemParams& params);
// Equation check only, with the challenge taken as given (interactive mode).
bool pi2_verify_interactive(const Pi2Statement& stmt, const Pi2Proof& proof,
                            const SystemParams& params);

}  // namespace bpks

#endif
