#include "bp3ksest/scheme.hpp"

#include <fstream>
#include <sstream>

namespace bpks {

// ---- key generation ----

TgcKeyPair keygen_tgc(const SystemParams& params, Drbg& rng) {
    TgcKeyPair kp;
    for (auto& ti : kp.t) ti = Scalar::random(rng);
    kp.pk.Omega = pair(params.g, params.g).pow(kp.t[0] * kp.t[1] * kp.t[2]);
    kp.pk.nu1 = params.g.pow(kp.t[1]);
    kp.pk.nu2 = params.g.pow(kp.t[2]);
    kp.pk.nu3 = params.g.pow(kp.t[3]);
    kp.pk.nu4 = params.g.pow(kp.t[4]);
    return kp;
}

TracerKeyPair keygen_tr(const SystemParams& params, Drbg& rng) {
    TracerKeyPair kp;
    kp.xt = Scalar::random(rng);
    kp.Yt = params.g.pow(kp.xt);
    return kp;
}

UserKeyPair keygen_user(const std::string& id, const SystemParams& params, Drbg& rng) {
    UserKeyPair kp;
    kp.id = id;
    kp.xu = Scalar::random_nonzero(rng);
    kp.Yu = params.g.pow(kp.xu);
    return kp;
}

// ---- tables ----

KeywordTable KeywordTable::build(const std::vector<std::string>& keywords,
                                 const SystemParams& params) {
    KeywordTable t;
    for (const std::string& kw : keywords) {
        Entry e;
        e.keyword = kw;
        e.omega = hash_to_scalar(kw);
        e.g_omega = params.g.pow(e.omega);
        std::string key = to_hex(e.g_omega.encode());
        auto [it, fresh] = t.reverse_.emplace(key, t.entries_.size());
        if (!fresh) {
            if (t.entries_[it->second].keyword == kw)
                throw std::invalid_argument("duplicate keyword: " + kw);
            throw std::invalid_argument("keyword hash collision on: " + kw);
        }
        t.entries_.push_back(std::move(e));
    }
    return t;
}

std::optional<std::string> KeywordTable::lookup(const GroupElem& g_omega) const {
    auto it = reverse_.find(to_hex(g_omega.encode()));
    if (it == reverse_.end()) return std::nullopt;
    return entries_[it->second].keyword;
}

void KeywordTable::save(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open table file for writing: " + path);
    for (const Entry& e : entries_) {
        Bytes kw(e.keyword.begin(), e.keyword.end());
        out << to_hex(e.g_omega.encode()) << ' ' << to_hex(kw) << '\n';
    }
    if (!out) throw std::runtime_error("table write failed: " + path);
}

KeywordTable KeywordTable::load(const std::string& path, const SystemParams& params) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open table file: " + path);
    std::vector<std::string> keywords;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string key_hex, kw_hex;
        if (!(ls >> key_hex >> kw_hex)) throw std::runtime_error("malformed table line");
        Bytes kw = from_hex(kw_hex);
        keywords.emplace_back(kw.begin(), kw.end());
    }
    KeywordTable t = build(keywords, params);
    return t;
}

void IdTable::insert(const std::string& id, const GroupElem& Yu) {
    std::string key = to_hex(Yu.encode());
    auto by_id = by_id_.find(id);
    if (by_id != by_id_.end()) {
        if (by_id->second == key) return;  // idempotent re-registration
        throw std::invalid_argument("identity already registered with a different key: " + id);
    }
    auto by_key = by_key_.find(key);
    if (by_key != by_key_.end())
        throw std::invalid_argument("key already registered under identity " + by_key->second);
    by_id_.emplace(id, key);
    by_key_.emplace(std::move(key), id);
}

std::optional<std::string> IdTable::lookup(const GroupElem& Yu) const {
    auto it = by_key_.find(to_hex(Yu.encode()));
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
}

void IdTable::save(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open table file for writing: " + path);
    for (const auto& [key, id] : by_key_) {
        Bytes idb(id.begin(), id.end());
        out << key << ' ' << to_hex(idb) << '\n';
    }
    if (!out) throw std::runtime_error("table write failed: " + path);
}

IdTable IdTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open table file: " + path);
    IdTable t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string key_hex, id_hex;
        if (!(ls >> key_hex >> id_hex)) throw std::runtime_error("malformed table line");
        Bytes idb = from_hex(id_hex);
        t.insert(std::string(idb.begin(), idb.end()), GroupElem::decode(from_hex(key_hex)));
    }
    return t;
}

SetupResult setup(const std::vector<std::string>& keywords) {
    if (keywords.empty()) throw std::invalid_argument("keyword list must be non-empty");
    SetupResult r{SystemParams::standard(), KeywordTable::build(keywords, SystemParams::standard())};
    return r;
}

// ---- registration ----

RegRequest reg_request(const UserKeyPair& user, const SystemParams& params, Drbg& rng) {
    RegRequest req;
    req.id = user.id;
    req.Yu = user.Yu;
    req.pi1 = pi1_prove(user.xu, user.Yu, params, rng);
    return req;
}

Credential reg_issue(const CaKeyPair& ca, const RegRequest& req, IdTable& table,
                     const SystemParams& params, Drbg& rng) {
    if (!pi1_verify(req.Yu, req.pi1, params))
        throw std::invalid_argument("registration proof rejected");
    table.insert(req.id, req.Yu);
    return issue(ca, req.Yu, params, rng);
}

// ---- trapdoor protocol ----

TrapdoorRequestResult trapdoor_request(const UserKeyPair& user, const PaillierKeyPair& paillier,
                                       const Credential& cred, const std::string& keyword,
                                       const GroupElem& Yt, const CaPublicKey& ca_pk,
                                       const SystemParams& params, Drbg& rng) {
    Scalar omega = hash_to_scalar(keyword);
    TrapdoorRequestResult out;

    // first select block: u0,u1,u2,r1',r2'
    Scalar u0 = Scalar::random(rng);
    Scalar u1 = Scalar::random(rng);
    Scalar u2 = Scalar::random(rng);
    Scalar r1p = Scalar::random_nonzero(rng);
    Scalar r2p = Scalar::random_nonzero(rng);
    // second select block: r0,r,r',u3
    Scalar r0 = Scalar::random(rng);
    Scalar r = Scalar::random_nonzero(rng);
    Scalar r_prime = Scalar::random_nonzero(rng);
    Scalar u3 = Scalar::random_nonzero(rng);

    out.session.tpp = TppUserState::create(paillier, u0, u1, u2, r1p, r2p, u3);
    out.session.r0 = r0;
    out.session.r = r;
    out.session.r_prime = r_prime;
    out.session.omega = omega;

    TrapdoorRecord& rec = out.record;
    rec.h_omega_prime = keyword_map(omega, params).pow(u3);
    rec.D1 = params.g.pow(omega) * Yt.pow(r0);
    rec.D2 = params.g.pow(user.xu) * Yt.pow(r0);
    rec.D3 = params.g.pow(r0);
    rec.D4 = params.g.pow(omega) * params.h1.pow(r);
    rec.D5 = params.g.pow(user.xu) * params.h2.pow(r);
    rec.sigma = randomize(cred, r, r_prime);

    Pi2Statement stmt = Pi2Statement::make(rec.h_omega_prime, rec.D1, rec.D2, rec.D3, rec.D4,
                                           rec.D5, rec.sigma, Yt, ca_pk, params);
    Pi2Witness wit{omega, u3, r0, r, user.xu};
    rec.pi2 = pi2_prove(stmt, wit, params, rng);

    out.msg1 = tpp_round1_user(out.session.tpp, rng);
    return out;
}

TrapdoorRespondResult trapdoor_respond(const TgcKeyPair& tgc, const CaPublicKey& ca_pk,
                                       const GroupElem& Yt, const TrapdoorRecord& record,
                                       const TppMsg1& msg1, Ledger& ledger, int64_t timestamp,
                                       const SystemParams& params, Drbg& rng) {
    Pi2Statement stmt = Pi2Statement::make(record.h_omega_prime, record.D1, record.D2, record.D3,
                                           record.D4, record.D5, record.sigma, Yt, ca_pk, params);
    if (!pi2_verify(stmt, record.pi2, params))
        throw std::invalid_argument("trapdoor request proof rejected");
    if (!show_verify(record.sigma, ca_pk, params))
        throw std::invalid_argument("credential presentation rejected");

    // record is immutable before any response material leaves this call
    ledger.append(record.encode(), timestamp);

    TrapdoorRespondResult out;
    out.session.rhat1 = Scalar::random(rng);
    out.session.rhat2 = Scalar::random(rng);
    out.session.h_omega_prime = record.h_omega_prime;
    out.msg2 = tpp_round2_tgc(msg1, tgc.t, out.session.rhat1, out.session.rhat2, rng);
    return out;
}

TppMsg3 trapdoor_user_round3(const TrapdoorSession& session, const TppMsg2& msg2) {
    return tpp_round3_user(msg2, session.tpp);
}

BlindedTrapdoor trapdoor_complete(const TgcKeyPair& tgc, const TgcSession& session,
                                  const TppMsg3& msg3, const SystemParams& params) {
    const GroupElem& hw = session.h_omega_prime;
    BlindedTrapdoor b;
    b.d0p = params.g.pow(msg3.x0);
    b.d1p = params.g.pow(msg3.x1) * hw.pow((session.rhat1 * tgc.t[2]).neg());
    b.d2p = params.g.pow(msg3.x2) * hw.pow((session.rhat1 * tgc.t[1]).neg());
    b.d3p = hw.pow((session.rhat2 * tgc.t[4]).neg());
    b.d4p = hw.pow((session.rhat2 * tgc.t[3]).neg());
    return b;
}

Trapdoor trapdoor_finalize(TrapdoorSession& session, const BlindedTrapdoor& blinded,
                           const SystemParams& params) {
    if (session.consumed) throw std::logic_error("trapdoor session already consumed");
    session.consumed = true;

    Scalar e1 = session.tpp.r1p * session.tpp.u3.inv();  // r1'/u3
    Scalar e2 = session.tpp.r2p * session.tpp.u3.inv();  // r2'/u3
    Trapdoor t;
    t.d0 = blinded.d0p * params.g.pow(session.tpp.u0.neg());
    t.d1 = (blinded.d1p * params.g.pow(session.tpp.u1.neg())).pow(e1);
    t.d2 = (blinded.d2p * params.g.pow(session.tpp.u2.neg())).pow(e1);
    t.d3 = blinded.d3p.pow(e2);
    t.d4 = blinded.d4p.pow(e2);
    return t;
}

// ---- PEKS / Test ----

namespace detail {

Ciphertext peks_encrypt_with_coins(const TgcPublicKey& tgc_pk, const Scalar& omega,
                                   const Scalar& s, const Scalar& s1, const Scalar& s2,
                                   const SystemParams& params) {
    GroupElem hw = keyword_map(omega, params);
    Ciphertext c;
    c.c_prime = tgc_pk.Omega.pow(s);
    c.c0 = hw.pow(s);
    c.c1 = tgc_pk.nu1.pow(s - s1);
    c.c2 = tgc_pk.nu2.pow(s1);
    c.c3 = tgc_pk.nu3.pow(s - s2);
    c.c4 = tgc_pk.nu4.pow(s2);
    return c;
}

}  // namespace detail

Ciphertext peks_encrypt(const TgcPublicKey& tgc_pk, const std::string& keyword,
                        const SystemParams& params, Drbg& rng) {
    Scalar s = Scalar::random(rng);
    Scalar s1 = Scalar::random(rng);
    Scalar s2 = Scalar::random(rng);
    return detail::peks_encrypt_with_coins(tgc_pk, hash_to_scalar(keyword), s, s1, s2, params);
}

bool test_match(const Trapdoor& t, const Ciphertext& c, const SystemParams&) {
    std::array<PointPair, 5> pairs{PointPair{c.c0, t.d0}, PointPair{c.c1, t.d1},
                                   PointPair{c.c2, t.d2}, PointPair{c.c3, t.d3},
                                   PointPair{c.c4, t.d4}};
    return (pair_product(pairs) * c.c_prime).is_one();
}

Trapdoor extract_direct(const TgcKeyPair& tgc, const std::string& keyword,
                        const SystemParams& params, Drbg& rng) {
    Scalar rho1 = Scalar::random(rng);
    Scalar rho2 = Scalar::random(rng);
    GroupElem hw = keyword_map(hash_to_scalar(keyword), params);
    Trapdoor t;
    t.d0 = params.g.pow(rho1 * tgc.t[1] * tgc.t[2] + rho2 * tgc.t[3] * tgc.t[4]);
    t.d1 = params.g.pow((tgc.t[0] * tgc.t[2]).neg()) * hw.pow((rho1 * tgc.t[2]).neg());
    t.d2 = params.g.pow((tgc.t[0] * tgc.t[1]).neg()) * hw.pow((rho1 * tgc.t[1]).neg());
    t.d3 = hw.pow((rho2 * tgc.t[4]).neg());
    t.d4 = hw.pow((rho2 * tgc.t[3]).neg());
    return t;
}

// ---- record validation and tracing ----

bool record_validate(const TrapdoorRecord& record, const CaPublicKey& ca_pk, const GroupElem& Yt,
                     const SystemParams& params) {
    Pi2Statement stmt = Pi2Statement::make(record.h_omega_prime, record.D1, record.D2, record.D3,
                                           record.D4, record.D5, record.sigma, Yt, ca_pk, params);
    return pi2_verify(stmt, record.pi2, params) && show_verify(record.sigma, ca_pk, params);
}

TraceResult trace(const TrapdoorRecord& record, const Scalar& xt, const KeywordTable& keywords,
                  const IdTable& ids) {
    GroupElem d3_xt = record.D3.pow(xt);
    GroupElem g_omega = record.D1 * d3_xt.inv();
    GroupElem Yu = record.D2 * d3_xt.inv();
    auto kw = keywords.lookup(g_omega);
    if (!kw) throw UnknownKeywordError{};
    auto id = ids.lookup(Yu);
    if (!id) throw UnknownUserError{};
    return TraceResult{*id, *kw};
}

// ---- codecs ----

Bytes TgcPublicKey::encode() const {
    ByteWriter w;
    w.put_lp(Omega.encode());
    w.put_lp(nu1.encode());
    w.put_lp(nu2.encode());
    w.put_lp(nu3.encode());
    w.put_lp(nu4.encode());
    return w.take();
}

TgcPublicKey TgcPublicKey::decode(const Bytes& in) {
    ByteReader r(in);
    TgcPublicKey pk;
    pk.Omega = GtElem::decode(r.get_lp());
    pk.nu1 = GroupElem::decode(r.get_lp());
    pk.nu2 = GroupElem::decode(r.get_lp());
    pk.nu3 = GroupElem::decode(r.get_lp());
    pk.nu4 = GroupElem::decode(r.get_lp());
    r.finish();
    return pk;
}

Bytes RegRequest::encode() const {
    ByteWriter w;
    w.put_lp(id);
    w.put_lp(Yu.encode());
    w.put_lp(pi1.encode());
    return w.take();
}

RegRequest RegRequest::decode(const Bytes& in) {
    ByteReader r(in);
    RegRequest req;
    req.id = r.get_lp_string();
    req.Yu = GroupElem::decode(r.get_lp());
    req.pi1 = Pi1Proof::decode(r.get_lp());
    r.finish();
    return req;
}

Bytes TrapdoorRecord::encode() const {
    ByteWriter w;
    w.put_lp(h_omega_prime.encode());
    w.put_lp(D1.encode());
    w.put_lp(D2.encode());
    w.put_lp(D3.encode());
    w.put_lp(D4.encode());
    w.put_lp(D5.encode());
    w.put_lp(sigma.encode());
    w.put_lp(pi2.encode());
    return w.take();
}

TrapdoorRecord TrapdoorRecord::decode(const Bytes& in) {
    ByteReader r(in);
    TrapdoorRecord rec;
    rec.h_omega_prime = GroupElem::decode(r.get_lp());
    rec.D1 = GroupElem::decode(r.get_lp());
    rec.D2 = GroupElem::decode(r.get_lp());
    rec.D3 = GroupElem::decode(r.get_lp());
    rec.D4 = GroupElem::decode(r.get_lp());
    rec.D5 = GroupElem::decode(r.get_lp());
    rec.sigma = RandomizedCredential::decode(r.get_lp());
    rec.pi2 = Pi2Proof::decode(r.get_lp());
    r.finish();
    return rec;
}

Bytes Trapdoor::encode() const {
    ByteWriter w;
    for (const GroupElem* d : {&d0, &d1, &d2, &d3, &d4}) w.put_lp(d->encode());
    return w.take();
}

Trapdoor Trapdoor::decode(const Bytes& in) {
    ByteReader r(in);
    Trapdoor t;
    t.d0 = GroupElem::decode(r.get_lp());
    t.d1 = GroupElem::decode(r.get_lp());
    t.d2 = GroupElem::decode(r.get_lp());
    t.d3 = GroupElem::decode(r.get_lp());
    t.d4 = GroupElem::decode(r.get_lp());
    r.finish();
    return t;
}

Bytes BlindedTrapdoor::encode() const {
    ByteWriter w;
    for (const GroupElem* d : {&d0p, &d1p, &d2p, &d3p, &d4p}) w.put_lp(d->encode());
    return w.take();
}

BlindedTrapdoor BlindedTrapdoor::decode(const Bytes& in) {
    ByteReader r(in);
    BlindedTrapdoor b;
    b.d0p = GroupElem::decode(r.get_lp());
    b.d1p = GroupElem::decode(r.get_lp());
    b.d2p = GroupElem::decode(r.get_lp());
    b.d3p = GroupElem::decode(r.get_lp());
    b.d4p = GroupElem::decode(r.get_lp());
    r.finish();
    return b;
}

Bytes Ciphertext::encode() const {
    ByteWriter w;
    w.put_lp(c_prime.encode());
    for (const GroupElem* c : {&c0, &c1, &c2, &c3, &c4}) w.put_lp(c->encode());
    return w.take();
}

Ciphertext Ciphertext::decode(const Bytes& in) {
    ByteReader r(in);
    Ciphertext c;
    c.c_prime = GtElem::decode(r.get_lp());
    c.c0 = GroupElem::decode(r.get_lp());
    c.c1 = GroupElem::decode(r.get_lp());
    c.c2 = GroupElem::decode(r.get_lp());
    c.c3 = GroupElem::decode(r.get_lp());
    c.c4 = GroupElem::decode(r.get_lp());
    r.finish();
    return c;
}

}  // namespace bpks
