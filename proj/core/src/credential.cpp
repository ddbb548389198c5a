#include "bp3ksest/credential.hpp"

#include <array>
#include <stdexcept>

namespace bpks {

CaKeyPair CaKeyPair::generate(const SystemParams& params, Drbg& rng) {
    CaKeyPair kp;
    kp.x = Scalar::random(rng);
    kp.y = Scalar::random(rng);
    kp.X = params.g.pow(kp.x);
    kp.Y = params.g.pow(kp.y);
    return kp;
}

Credential issue(const CaKeyPair& sk, const GroupElem& Yu, const SystemParams& params, Drbg& rng) {
    Scalar ru = Scalar::random(rng);
    Credential cred;
    cred.a = params.g.pow(ru);
    cred.b = cred.a.pow(sk.y);
    cred.c = cred.a.pow(sk.x) * Yu.pow(ru * sk.x * sk.y);
    return cred;
}

RandomizedCredential randomize(const Credential& cred, const Scalar& r, const Scalar& r_prime) {
    if (r.is_zero() || r_prime.is_zero())
        throw std::invalid_argument("credential randomizers must be nonzero");
    RandomizedCredential rc;
    rc.a_t = cred.a.pow(r_prime);
    rc.b_t = cred.b.pow(r_prime);
    rc.c_hat = cred.c.pow(r_prime * r);
    return rc;
}

bool show_verify(const RandomizedCredential& rc, const CaPublicKey& pk,
                 const SystemParams& params) {
    if (rc.a_t.is_identity()) return false;
    // e(a~, Y) * e(g^-1, b~) == 1
    std::array<PointPair, 2> pairs{PointPair{rc.a_t, pk.Y}, PointPair{params.g.inv(), rc.b_t}};
    return pair_product(pairs).is_one();
}

Bytes CaPublicKey::encode() const {
    ByteWriter w;
    w.put_lp(X.encode());
    w.put_lp(Y.encode());
    return w.take();
}

CaPublicKey CaPublicKey::decode(const Bytes& in) {
    ByteReader r(in);
    CaPublicKey pk;
    pk.X = GroupElem::decode(r.get_lp());
    pk.Y = GroupElem::decode(r.get_lp());
    r.finish();
    return pk;
}

Bytes Credential::encode() const {
    ByteWriter w;
    w.put_lp(a.encode());
    w.put_lp(b.encode());
    w.put_lp(c.encode());
    return w.take();
}

Credential Credential::decode(const Bytes& in) {
    ByteReader r(in);
    Credential cred;
    cred.a = GroupElem::decode(r.get_lp());
    cred.b = GroupElem::decode(r.get_lp());
    cred.c = GroupElem::decode(r.get_lp());
    r.finish();
    return cred;
}

Bytes RandomizedCredential::encode() const {
    ByteWriter w;
    w.put_lp(a_t.encode());
    w.put_lp(b_t.encode());
    w.put_lp(c_hat.encode());
    return w.take();
}

RandomizedCredential RandomizedCredential::decode(const Bytes& in) {
    ByteReader r(in);
    RandomizedCredential rc;
    rc.a_t = GroupElem::decode(r.get_lp());
    rc.b_t = GroupElem::decode(r.get_lp());
    rc.c_hat = GroupElem::decode(r.get_lp());
    r.finish();
    return rc;
}

}  // namespace bpks
