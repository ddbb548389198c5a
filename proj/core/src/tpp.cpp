#include "bp3ksest/tpp.hpp"

#include <stdexcept>

namespace bpks {

namespace {

Bytes mpz_lp_bytes(const mpz_class& v) {
    size_t bytes = v == 0 ? 0 : (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    Bytes out(bytes);
    size_t count = 0;
    if (bytes > 0) mpz_export(out.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
    return out;
}

mpz_class mpz_from_bytes(const Bytes& in) {
    mpz_class v;
    mpz_import(v.get_mpz_t(), in.size(), 1, 1, 1, 0, in.data());
    return v;
}

HomCiphertext read_ct(ByteReader& r, const std::shared_ptr<const PaillierPublicKey>& pk) {
    mpz_class v = mpz_from_bytes(r.get_lp());
    if (v < 0 || v >= pk->n2) throw std::invalid_argument("ciphertext out of range");
    return HomCiphertext{std::move(v), pk};
}

}  // namespace

TppUserState TppUserState::create(const PaillierKeyPair& kp, const Scalar& u0, const Scalar& u1,
                                  const Scalar& u2, const Scalar& r1p, const Scalar& r2p,
                                  const Scalar& u3) {
    if (r1p.is_zero() || r2p.is_zero() || u3.is_zero())
        throw std::invalid_argument("r1', r2' and u3 must be nonzero");
    TppUserState s;
    s.u0 = u0;
    s.u1 = u1;
    s.u2 = u2;
    s.r1p = r1p;
    s.r2p = r2p;
    s.u3 = u3;
    s.q = u3 * r1p.inv();
    s.paillier = &kp;
    return s;
}

TppUserState TppUserState::random(const PaillierKeyPair& kp, Drbg& rng) {
    Scalar u0 = Scalar::random(rng);
    Scalar u1 = Scalar::random(rng);
    Scalar u2 = Scalar::random(rng);
    Scalar r1p = Scalar::random_nonzero(rng);
    Scalar r2p = Scalar::random_nonzero(rng);
    Scalar u3 = Scalar::random_nonzero(rng);
    return create(kp, u0, u1, u2, r1p, r2p, u3);
}

TppMsg1 tpp_round1_user(const TppUserState& state, Drbg& rng) {
    const PaillierKeyPair& kp = *state.paillier;
    TppMsg1 m;
    m.e_r1p = kp.encrypt(state.r1p.value(), rng);
    m.e_r2p = kp.encrypt(state.r2p.value(), rng);
    m.e_q = kp.encrypt(state.q.value(), rng);
    m.e_u0 = kp.encrypt(state.u0.value(), rng);
    m.e_u1 = kp.encrypt(state.u1.value(), rng);
    m.e_u2 = kp.encrypt(state.u2.value(), rng);
    m.pk = *kp.pk();
    return m;
}

TppMsg2 tpp_round2_with_masks(const TppMsg1& m1, const std::array<Scalar, 5>& t,
                              const Scalar& rhat1, const Scalar& rhat2,
                              const std::array<mpz_class, 3>& masks, Drbg& rng) {
    const mpz_class mask_bound = mpz_class(1) << 80;
    for (const auto& m : masks)
        if (m < 0 || m >= mask_bound) throw std::invalid_argument("mask out of range");
    const mpz_class& p = group_order();

    Scalar alpha = rhat1 * t[1] * t[2];        // rhat1*t1*t2
    Scalar beta = rhat2 * t[3] * t[4];         // rhat2*t3*t4
    Scalar gamma1 = (t[0] * t[2]).neg();       // -(t0*t2) mod p
    Scalar gamma2 = (t[0] * t[1]).neg();       // -(t0*t1) mod p

    TppMsg2 out;
    out.e0 = hom_add(hom_add(hom_scale(m1.e_r1p, alpha.value()), hom_scale(m1.e_r2p, beta.value())),
                     hom_add(m1.e_u0, encrypt(m1.pk, masks[0] * p, rng)));
    out.e1 = hom_add(hom_scale(m1.e_q, gamma1.value()),
                     hom_add(m1.e_u1, encrypt(m1.pk, masks[1] * p, rng)));
    out.e2 = hom_add(hom_scale(m1.e_q, gamma2.value()),
                     hom_add(m1.e_u2, encrypt(m1.pk, masks[2] * p, rng)));
    return out;
}

TppMsg2 tpp_round2_tgc(const TppMsg1& m1, const std::array<Scalar, 5>& t, const Scalar& rhat1,
                       const Scalar& rhat2, Drbg& rng) {
    const mpz_class mask_bound = mpz_class(1) << 80;
    std::array<mpz_class, 3> masks;
    for (auto& m : masks) m = rng.below(mask_bound);
    return tpp_round2_with_masks(m1, t, rhat1, rhat2, masks, rng);
}

TppMsg3 tpp_round3_user(const TppMsg2& m2, const TppUserState& state) {
    const PaillierKeyPair& kp = *state.paillier;
    TppMsg3 out;
    out.x0 = Scalar(kp.decrypt(m2.e0));
    out.x1 = Scalar(kp.decrypt(m2.e1));
    out.x2 = Scalar(kp.decrypt(m2.e2));
    return out;
}

// ---- codecs: length-prefixed big-endian integers ----

Bytes TppMsg1::encode() const {
    ByteWriter w;
    w.put_lp(mpz_lp_bytes(pk.n));
    for (const HomCiphertext* c : {&e_r1p, &e_r2p, &e_q, &e_u0, &e_u1, &e_u2})
        w.put_lp(mpz_lp_bytes(c->value));
    return w.take();
}

TppMsg1 TppMsg1::decode(const Bytes& in) {
    ByteReader r(in);
    auto pk = std::make_shared<PaillierPublicKey>();
    pk->n = mpz_from_bytes(r.get_lp());
    if (pk->n <= 1) throw std::invalid_argument("invalid modulus");
    pk->n2 = pk->n * pk->n;
    TppMsg1 m;
    m.e_r1p = read_ct(r, pk);
    m.e_r2p = read_ct(r, pk);
    m.e_q = read_ct(r, pk);
    m.e_u0 = read_ct(r, pk);
    m.e_u1 = read_ct(r, pk);
    m.e_u2 = read_ct(r, pk);
    m.pk = *pk;
    r.finish();
    return m;
}

Bytes TppMsg2::encode() const {
    ByteWriter w;
    for (const HomCiphertext* c : {&e0, &e1, &e2}) w.put_lp(mpz_lp_bytes(c->value));
    return w.take();
}

TppMsg2 TppMsg2::decode(const Bytes& in, const PaillierPublicKey& pk) {
    ByteReader r(in);
    auto shared = std::make_shared<PaillierPublicKey>(pk);
    TppMsg2 m;
    m.e0 = read_ct(r, shared);
    m.e1 = read_ct(r, shared);
    m.e2 = read_ct(r, shared);
    r.finish();
    return m;
}

Bytes TppMsg3::encode() const {
    ByteWriter w;
    w.put_lp(x0.encode());
    w.put_lp(x1.encode());
    w.put_lp(x2.encode());
    return w.take();
}

TppMsg3 TppMsg3::decode(const Bytes& in) {
    ByteReader r(in);
    TppMsg3 m;
    m.x0 = Scalar::decode(r.get_lp());
    m.x1 = Scalar::decode(r.get_lp());
    m.x2 = Scalar::decode(r.get_lp());
    r.finish();
    return m;
}

}  // namespace bpks
