#include "bp3ksest/zkp.hpp"

#include <stdexcept>

namespace bpks {

namespace {

Scalar pi1_challenge(const GroupElem& Yu, const GroupElem& Yu_prime) {
    ByteWriter w;
    w.put_lp(Yu.encode());
    w.put_lp(Yu_prime.encode());
    return hash_to_scalar(w.bytes());
}

// c = H1(H(w)' || H(w)'' || D1 || D1' || D2 || D2' || D3 || D3' || D4 || D4'
//        || D5 || D5' || v_x || v_x')
Scalar pi2_challenge(const Pi2Statement& stmt, const GroupElem& h_dd, const GroupElem& D1p,
                     const GroupElem& D2p, const GroupElem& D3p, const GroupElem& D4p,
                     const GroupElem& D5p, const GtElem& vx_prime) {
    ByteWriter w;
    w.put_lp(stmt.h_omega_prime.encode());
    w.put_lp(h_dd.encode());
    w.put_lp(stmt.D1.encode());
    w.put_lp(D1p.encode());
    w.put_lp(stmt.D2.encode());
    w.put_lp(D2p.encode());
    w.put_lp(stmt.D3.encode());
    w.put_lp(D3p.encode());
    w.put_lp(stmt.D4.encode());
    w.put_lp(D4p.encode());
    w.put_lp(stmt.D5.encode());
    w.put_lp(D5p.encode());
    w.put_lp(stmt.vx.encode());
    w.put_lp(vx_prime.encode());
    return hash_to_scalar(w.bytes());
}

}  // namespace

Pi1Proof pi1_prove(const Scalar& xu, const GroupElem& Yu, const SystemParams& params, Drbg& rng,
                   std::optional<Scalar> forced_challenge) {
    Scalar xu_prime = Scalar::random(rng);
    Pi1Proof proof;
    proof.Yu_prime = params.g.pow(xu_prime);
    proof.c = forced_challenge ? *forced_challenge : pi1_challenge(Yu, proof.Yu_prime);
    proof.xu_hat = xu_prime - proof.c * xu;
    return proof;
}

bool pi1_verify_interactive(const GroupElem& Yu, const Pi1Proof& proof,
                            const SystemParams& params) {
    return proof.Yu_prime == params.g.pow(proof.xu_hat) * Yu.pow(proof.c);
}

bool pi1_verify(const GroupElem& Yu, const Pi1Proof& proof, const SystemParams& params) {
    if (proof.c != pi1_challenge(Yu, proof.Yu_prime)) return false;
    return pi1_verify_interactive(Yu, proof, params);
}

Pi2Statement Pi2Statement::make(const GroupElem& h_omega_prime, const GroupElem& D1,
                                const GroupElem& D2, const GroupElem& D3, const GroupElem& D4,
                                const GroupElem& D5, const RandomizedCredential& sigma,
                                const GroupElem& Yt, const CaPublicKey& ca,
                                const SystemParams& params) {
    Pi2Statement s;
    s.h_omega_prime = h_omega_prime;
    s.D1 = D1;
    s.D2 = D2;
    s.D3 = D3;
    s.D4 = D4;
    s.D5 = D5;
    s.sigma = sigma;
    s.Yt = Yt;
    s.ca = ca;
    s.vs = pair(params.g, sigma.c_hat);
    s.vx = pair(ca.X, sigma.a_t);
    s.vxy = pair(ca.X, sigma.b_t);
    return s;
}

Pi2Proof pi2_prove(const Pi2Statement& stmt, const Pi2Witness& wit, const SystemParams& params,
                   Drbg& rng, std::optional<Scalar> forced_challenge) {
    if (wit.u3.is_zero() || wit.r.is_zero())
        throw std::invalid_argument("witness requires u3 != 0 and r != 0");

    // relation self-check before committing to anything
    if (stmt.h_omega_prime != keyword_map(wit.omega, params).pow(wit.u3))
        throw std::invalid_argument("witness does not satisfy the H(w)' relation");
    if (stmt.D1 != params.g.pow(wit.omega) * stmt.Yt.pow(wit.r0))
        throw std::invalid_argument("witness does not satisfy the D1 relation");
    if (stmt.D2 != params.g.pow(wit.xu) * stmt.Yt.pow(wit.r0))
        throw std::invalid_argument("witness does not satisfy the D2 relation");
    if (stmt.D3 != params.g.pow(wit.r0))
        throw std::invalid_argument("witness does not satisfy the D3 relation");
    if (stmt.D4 != params.g.pow(wit.omega) * params.h1.pow(wit.r))
        throw std::invalid_argument("witness does not satisfy the D4 relation");
    if (stmt.D5 != params.g.pow(wit.xu) * params.h2.pow(wit.r))
        throw std::invalid_argument("witness does not satisfy the D5 relation");
    Scalar k = wit.r.inv();
    if (stmt.vs.pow(k) != stmt.vx * stmt.vxy.pow(wit.xu))
        throw std::invalid_argument("witness does not satisfy the credential relation");

    Scalar omega_n = Scalar::random(rng);  // w'
    Scalar u3_n = Scalar::random(rng);     // u3'
    Scalar r0_n = Scalar::random(rng);     // r0'
    Scalar r_n = Scalar::random(rng);      // r'
    Scalar xu_n = Scalar::random(rng);     // x_u'
    Scalar k_n = Scalar::random(rng);      // k'

    Pi2Proof proof;
    Scalar t_n = omega_n * u3_n;
    proof.h_omega_dprime = params.g0.pow(u3_n) * params.g1.pow(t_n);
    proof.D1p = params.g.pow(omega_n) * stmt.Yt.pow(r0_n);
    proof.D2p = params.g.pow(xu_n) * stmt.Yt.pow(r0_n);
    proof.D3p = params.g.pow(r0_n);
    proof.D4p = params.g.pow(omega_n) * params.h1.pow(r_n);
    proof.D5p = params.g.pow(xu_n) * params.h2.pow(r_n);
    proof.vx_prime = stmt.vs.pow(k_n) * stmt.vxy.pow(xu_n.neg());

    proof.c = forced_challenge
                  ? *forced_challenge
                  : pi2_challenge(stmt, proof.h_omega_dprime, proof.D1p, proof.D2p, proof.D3p,
                                  proof.D4p, proof.D5p, proof.vx_prime);

    Scalar t = wit.omega * wit.u3;
    proof.t_hat = t_n - proof.c * t;
    proof.omega_hat = omega_n - proof.c * wit.omega;
    proof.u3_hat = u3_n - proof.c * wit.u3;
    proof.r0_hat = r0_n - proof.c * wit.r0;
    proof.r_hat = r_n - proof.c * wit.r;
    proof.xu_hat = xu_n - proof.c * wit.xu;
    proof.k_hat = k_n - proof.c * k;
    return proof;
}

bool pi2_verify(const Pi2Statement& stmt, const Pi2Proof& proof, const SystemParams& params) {
    if (proof.c != pi2_challenge(stmt, proof.h_omega_dprime, proof.D1p, proof.D2p, proof.D3p,
                                 proof.D4p, proof.D5p, proof.vx_prime))
        return false;
    return pi2_verify_interactive(stmt, proof, params);
}

bool pi2_verify_interactive(const Pi2Statement& stmt, const Pi2Proof& proof,
                            const SystemParams& params) {
    if (proof.h_omega_dprime !=
        params.g0.pow(proof.u3_hat) * params.g1.pow(proof.t_hat) * stmt.h_omega_prime.pow(proof.c))
        return false;
    if (proof.D1p != params.g.pow(proof.omega_hat) * stmt.Yt.pow(proof.r0_hat) * stmt.D1.pow(proof.c))
        return false;
    if (proof.D2p != params.g.pow(proof.xu_hat) * stmt.Yt.pow(proof.r0_hat) * stmt.D2.pow(proof.c))
        return false;
    if (proof.D3p != params.g.pow(proof.r0_hat) * stmt.D3.pow(proof.c)) return false;
    if (proof.D4p != params.g.pow(proof.omega_hat) * params.h1.pow(proof.r_hat) * stmt.D4.pow(proof.c))
        return false;
    if (proof.D5p != params.g.pow(proof.xu_hat) * params.h2.pow(proof.r_hat) * stmt.D5.pow(proof.c))
        return false;
    if (proof.vx_prime !=
        stmt.vs.pow(proof.k_hat) * stmt.vxy.pow(proof.xu_hat.neg()) * stmt.vx.pow(proof.c))
        return false;
    return true;
}

Bytes Pi1Proof::encode() const {
    ByteWriter w;
    w.put_lp(Yu_prime.encode());
    w.put_lp(c.encode());
    w.put_lp(xu_hat.encode());
    return w.take();
}

Pi1Proof Pi1Proof::decode(const Bytes& in) {
    ByteReader r(in);
    Pi1Proof p;
    p.Yu_prime = GroupElem::decode(r.get_lp());
    p.c = Scalar::decode(r.get_lp());
    p.xu_hat = Scalar::decode(r.get_lp());
    r.finish();
    return p;
}

Bytes Pi2Proof::encode() const {
    ByteWriter w;
    w.put_lp(h_omega_dprime.encode());
    w.put_lp(D1p.encode());
    w.put_lp(D2p.encode());
    w.put_lp(D3p.encode());
    w.put_lp(D4p.encode());
    w.put_lp(D5p.encode());
    w.put_lp(vx_prime.encode());
    w.put_lp(c.encode());
    w.put_lp(t_hat.encode());
    w.put_lp(omega_hat.encode());
    w.put_lp(u3_hat.encode());
    w.put_lp(r0_hat.encode());
    w.put_lp(r_hat.encode());
    w.put_lp(xu_hat.encode());
    w.put_lp(k_hat.encode());
    return w.take();
}

Pi2Proof Pi2Proof::decode(const Bytes& in) {
    ByteReader r(in);
    Pi2Proof p;
    p.h_omega_dprime = GroupElem::decode(r.get_lp());
    p.D1p = GroupElem::decode(r.get_lp());
    p.D2p = GroupElem::decode(r.get_lp());
    p.D3p = GroupElem::decode(r.get_lp());
    p.D4p = GroupElem::decode(r.get_lp());
    p.D5p = GroupElem::decode(r.get_lp());
    p.vx_prime = GtElem::decode(r.get_lp());
    p.c = Scalar::decode(r.get_lp());
    p.t_hat = Scalar::decode(r.get_lp());
    p.omega_hat = Scalar::decode(r.get_lp());
    p.u3_hat = Scalar::decode(r.get_lp());
    p.r0_hat = Scalar::decode(r.get_lp());
    p.r_hat = Scalar::decode(r.get_lp());
    p.xu_hat = Scalar::decode(r.get_lp());
    p.k_hat = Scalar::decode(r.get_lp());
    r.finish();
    return p;
}

}  // namespace bpks
