#ifndef BP3KSEST_SCHEME_HPP
#define BP3KSEST_SCHEME_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bp3ksest/credential.hpp"
#include "bp3ksest/ledger.hpp"
#include "bp3ksest/tpp.hpp"
#include "bp3ksest/zkp.hpp"

namespace bpks {

// ---- key material ----

struct TgcPublicKey {
    GtElem Omega;                    // e(g,g)^{t0*t1*t2}
    GroupElem nu1, nu2, nu3, nu4;    // g^{t1}, g^{t2}, g^{t3}, g^{t4}

    Bytes encode() const;
    static TgcPublicKey decode(const Bytes& in);
};

struct TgcKeyPair {
    std::array<Scalar, 5> t;
    TgcPublicKey pk;
};

struct TracerKeyPair {
    Scalar xt;
    GroupElem Yt;
};

struct UserKeyPair {
    std::string id;
    Scalar xu;      // nonzero
    GroupElem Yu;   // g^{xu}
};

TgcKeyPair keygen_tgc(const SystemParams& params, Drbg& rng);
TracerKeyPair keygen_tr(const SystemParams& params, Drbg& rng);
UserKeyPair keygen_user(const std::string& id, const SystemParams& params, Drbg& rng);
// keygen_ca is CaKeyPair::generate (credential.hpp)

// ---- tables ----

class KeywordTable {
public:
    struct Entry {
        std::string keyword;
        Scalar omega;
        GroupElem g_omega;
    };

    // Rejects duplicate keyword strings (and hash collisions on omega).
    static KeywordTable build(const std::vector<std::string>& keywords,
                              const SystemParams& params);

    std::optional<std::string> lookup(const GroupElem& g_omega) const;
    const std::vector<Entry>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }

    void save(const std::string& path) const;
    static KeywordTable load(const std::string& path, const SystemParams& params);

private:
    std::vector<Entry> entries_;
    std::unordered_map<std::string, size_t> reverse_;  // hex(enc(g^w)) -> index
};

class IdTable {
public:
    // Same (id, key) twice is a no-op; same id with a different key or the
    // same key under a different id is an error.
    void insert(const std::string& id, const GroupElem& Yu);
    std::optional<std::string> lookup(const GroupElem& Yu) const;
    size_t size() const { return by_id_.size(); }

    void save(const std::string& path) const;
    static IdTable load(const std::string& path);

private:
    std::unordered_map<std::string, std::string> by_id_;   // id -> hex(enc(Yu))
    std::unordered_map<std::string, std::string> by_key_;  // hex(enc(Yu)) -> id
};

struct SetupResult {
    SystemParams params;
    KeywordTable table;
};

// Builds the keyword table over the fixed public parameters.
SetupResult setup(const std::vector<std::string>& keywords);

// ---- registration ----

struct RegRequest {
    std::string id;
    GroupElem Yu;
    Pi1Proof pi1;

    Bytes encode() const;
    static RegRequest decode(const Bytes& in);
};

RegRequest reg_request(const UserKeyPair& user, const SystemParams& params, Drbg& rng);
// Verifies the proof, records (id, Yu) and issues the credential. Throws on
// an invalid proof or an id/key conflict; the table is untouched on failure.
Credential reg_issue(const CaKeyPair& ca, const RegRequest& req, IdTable& table,
                     const SystemParams& params, Drbg& rng);

// ---- trapdoor protocol ----

struct TrapdoorRecord {
    GroupElem h_omega_prime;
    GroupElem D1, D2, D3, D4, D5;
    RandomizedCredential sigma;
    Pi2Proof pi2;

    Bytes encode() const;
    static TrapdoorRecord decode(const Bytes& in);
};

struct Trapdoor {
    GroupElem d0, d1, d2, d3, d4;

    Bytes encode() const;
    static Trapdoor decode(const Bytes& in);
};

struct BlindedTrapdoor {
    GroupElem d0p, d1p, d2p, d3p, d4p;

    Bytes encode() const;
    static BlindedTrapdoor decode(const Bytes& in);
};

struct Ciphertext {
    GtElem c_prime;
    GroupElem c0, c1, c2, c3, c4;

    Bytes encode() const;
    static Ciphertext decode(const Bytes& in);
};

// Requester-side state for one trapdoor flow. Single owner, consumed exactly
// once by trapdoor_finalize.
struct TrapdoorSession {
    TppUserState tpp;
    Scalar r0, r, r_prime;
    Scalar omega;
    bool consumed = false;
};

struct TrapdoorRequestResult {
    TrapdoorRecord record;
    TrapdoorSession session;
    TppMsg1 msg1;
};

// Responder-side state between the verification turn and the blinded-key
// turn of one flow.
struct TgcSession {
    Scalar rhat1, rhat2;
    GroupElem h_omega_prime;
};

struct TrapdoorRespondResult {
    TgcSession session;
    TppMsg2 msg2;
};

// The keyword is mapped through H1; out-of-vocabulary strings are accepted
// here (the responder never sees the keyword) and surface later in trace.
// ca_pk is needed because v_x = e(X, a~) anchors the credential part of Pi2.
TrapdoorRequestResult trapdoor_request(const UserKeyPair& user, const PaillierKeyPair& paillier,
                                       const Credential& cred, const std::string& keyword,
                                       const GroupElem& Yt, const CaPublicKey& ca_pk,
                                       const SystemParams& params, Drbg& rng);

// Verifies Pi2 and the credential presentation; on success appends the
// record to the ledger before any response material is produced. Throws on
// a failed check and leaves the ledger untouched.
TrapdoorRespondResult trapdoor_respond(const TgcKeyPair& tgc, const CaPublicKey& ca_pk,
                                       const GroupElem& Yt, const TrapdoorRecord& record,
                                       const TppMsg1& msg1, Ledger& ledger, int64_t timestamp,
                                       const SystemParams& params, Drbg& rng);

TppMsg3 trapdoor_user_round3(const TrapdoorSession& session, const TppMsg2& msg2);

BlindedTrapdoor trapdoor_complete(const TgcKeyPair& tgc, const TgcSession& session,
                                  const TppMsg3& msg3, const SystemParams& params);

// Consumes the session; a second call throws.
Trapdoor trapdoor_finalize(TrapdoorSession& session, const BlindedTrapdoor& blinded,
                           const SystemParams& params);

// ---- PEKS / Test ----

Ciphertext peks_encrypt(const TgcPublicKey& tgc_pk, const std::string& keyword,
                        const SystemParams& params, Drbg& rng);

// prod_i e(C_i, d_i) * C' == 1_T
bool test_match(const Trapdoor& t, const Ciphertext& c, const SystemParams& params);

// Direct extraction from the responder secrets (reduction-style oracle).
Trapdoor extract_direct(const TgcKeyPair& tgc, const std::string& keyword,
                        const SystemParams& params, Drbg& rng);

// ---- record validation and tracing ----

bool record_validate(const TrapdoorRecord& record, const CaPublicKey& ca_pk, const GroupElem& Yt,
                     const SystemParams& params);

struct UnknownKeywordError : std::runtime_error {
    UnknownKeywordError() : std::runtime_error("keyword not present in keyword table") {}
};
struct UnknownUserError : std::runtime_error {
    UnknownUserError() : std::runtime_error("user key not present in identity table") {}
};

struct TraceResult {
    std::string id;
    std::string keyword;
};

// g^w = D1 / D3^{xt}, Yu = D2 / D3^{xt}, then reverse lookups.
TraceResult trace(const TrapdoorRecord& record, const Scalar& xt, const KeywordTable& keywords,
                  const IdTable& ids);

namespace detail {
// PEKS with explicit exponents; peks_encrypt draws s, s1, s2 and delegates.
Ciphertext peks_encrypt_with_coins(const TgcPublicKey& tgc_pk, const Scalar& omega,
                                   const Scalar& s, const Scalar& s1, const Scalar& s2,
                                   const SystemParams& params);
}  // namespace detail

}  // namespace bpks

#endif
