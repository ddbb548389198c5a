#include "bp3ksest/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace bpks {

namespace {

std::string counted_name(size_t idx, std::string name) {
    for (char& c : name)
        if (c == '/') c = '_';
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04zu_", idx);
    return buf + name;
}

// Ordered log of every serialized protocol message.
class Transcript {
public:
    void put(const std::string& name, const Bytes& data) {
        ByteWriter w;
        w.put_lp(name);
        w.put_lp(data);
        Bytes framed = w.take();
        digest_input_.insert(digest_input_.end(), framed.begin(), framed.end());
        messages_.emplace_back(name, data);
    }

    std::string digest_hex() const {
        Digest d = sha256(digest_input_);
        return to_hex(Bytes(d.begin(), d.end()));
    }

    void dump(const std::string& dir) const {
        namespace fs = std::filesystem;
        fs::create_directories(dir);
        for (size_t i = 0; i < messages_.size(); ++i) {
            const auto& [name, data] = messages_[i];
            std::ofstream out(fs::path(dir) / (counted_name(i, name) + ".bin"),
                              std::ios::binary | std::ios::trunc);
            out.write(reinterpret_cast<const char*>(data.data()),
                      static_cast<std::streamsize>(data.size()));
            if (!out) throw std::runtime_error("transcript dump failed");
        }
    }

private:
    std::vector<std::pair<std::string, Bytes>> messages_;
    Bytes digest_input_;
};

std::vector<std::string> make_vocabulary(size_t n) {
    std::vector<std::string> kws;
    kws.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "kw-%03zu", i);
        kws.emplace_back(buf);
    }
    return kws;
}

std::string user_name(size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "user-%03zu", i);
    return buf;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ScenarioError("scenario check failed: " + what);
}

constexpr int64_t kTimestampBase = 1700000000;

struct Flow {
    size_t user_idx;
    size_t keyword_idx;
    Trapdoor trapdoor;
    size_t block_idx;
};

}  // namespace

ScenarioReport run_scenario(const ScenarioConfig& cfg) {
    require(cfg.n >= 1, "vocabulary must be non-empty");
    Drbg root(cfg.seed);
    Transcript transcript;
    ScenarioReport report;

    // Setup
    std::vector<std::string> vocab = make_vocabulary(cfg.n);
    SetupResult sr = setup(vocab);
    const SystemParams& params = sr.params;
    transcript.put("setup/params", params.encode());

    // KeyGen x4
    Drbg ca_rng = root.fork("ca");
    CaKeyPair ca = CaKeyPair::generate(params, ca_rng);
    Drbg tgc_rng = root.fork("tgc");
    TgcKeyPair tgc = keygen_tgc(params, tgc_rng);
    Drbg tr_rng = root.fork("tr");
    TracerKeyPair tr = keygen_tr(params, tr_rng);
    CaPublicKey ca_pk{ca.X, ca.Y};
    transcript.put("keygen/ca", ca_pk.encode());
    transcript.put("keygen/tgc", tgc.pk.encode());
    transcript.put("keygen/tr", tr.Yt.encode());

    struct Party {
        UserKeyPair keys;
        PaillierKeyPair paillier;
        Credential cred;
    };
    std::vector<Party> users;
    users.reserve(cfg.users);

    // Registration
    IdTable id_table;
    for (size_t i = 0; i < cfg.users; ++i) {
        Party p;
        Drbg urng = root.fork("user:" + user_name(i));
        p.keys = keygen_user(user_name(i), params, urng);
        Drbg prng = root.fork("paillier:" + user_name(i));
        p.paillier = PaillierKeyPair::generate(2048, prng);

        Drbg reg_rng = root.fork("reg:" + user_name(i));
        RegRequest req = reg_request(p.keys, params, reg_rng);
        Bytes req_bytes = req.encode();
        transcript.put("reg/" + p.keys.id + "/request", req_bytes);

        RegRequest received = RegRequest::decode(req_bytes);
        Drbg issue_rng = root.fork("ca-issue:" + user_name(i));
        Credential cred = reg_issue(ca, received, id_table, params, issue_rng);
        Bytes cred_bytes = cred.encode();
        transcript.put("reg/" + p.keys.id + "/credential", cred_bytes);
        p.cred = Credential::decode(cred_bytes);
        users.push_back(std::move(p));
    }

    // Blind trapdoor flows
    Ledger ledger;
    std::vector<Flow> flows;
    for (size_t u = 0; u < cfg.users; ++u) {
        for (size_t qi = 0; qi < cfg.queries; ++qi) {
            Flow flow;
            flow.user_idx = u;
            flow.keyword_idx = (u * cfg.queries + qi) % cfg.n;
            const std::string& kw = vocab[flow.keyword_idx];
            std::string tag = user_name(u) + "/q" + std::to_string(qi);

            Drbg flow_rng = root.fork("flow:" + tag);
            TrapdoorRequestResult req = trapdoor_request(users[u].keys, users[u].paillier,
                                                         users[u].cred, kw, tr.Yt, ca_pk, params,
                                                         flow_rng);
            Bytes record_bytes = req.record.encode();
            Bytes msg1_bytes = req.msg1.encode();
            transcript.put("trapdoor/" + tag + "/record", record_bytes);
            transcript.put("trapdoor/" + tag + "/tpp1", msg1_bytes);

            Drbg tgc_flow_rng = root.fork("tgc:" + tag);
            TrapdoorRespondResult resp;
            try {
                resp = trapdoor_respond(tgc, ca_pk, tr.Yt, TrapdoorRecord::decode(record_bytes),
                                        TppMsg1::decode(msg1_bytes), ledger,
                                        kTimestampBase + static_cast<int64_t>(ledger.size()),
                                        params, tgc_flow_rng);
            } catch (const std::exception& e) {
                throw ScenarioError(std::string("honest trapdoor request rejected "
                                                "(request verification): ") +
                                    e.what());
            }
            flow.block_idx = ledger.size() - 1;
            Bytes msg2_bytes = resp.msg2.encode();
            transcript.put("trapdoor/" + tag + "/tpp2", msg2_bytes);

            TppMsg3 msg3 = trapdoor_user_round3(
                req.session, TppMsg2::decode(msg2_bytes, *users[u].paillier.pk()));
            Bytes msg3_bytes = msg3.encode();
            transcript.put("trapdoor/" + tag + "/tpp3", msg3_bytes);

            BlindedTrapdoor blinded =
                trapdoor_complete(tgc, resp.session, TppMsg3::decode(msg3_bytes), params);
            Bytes blinded_bytes = blinded.encode();
            transcript.put("trapdoor/" + tag + "/blinded", blinded_bytes);

            flow.trapdoor =
                trapdoor_finalize(req.session, BlindedTrapdoor::decode(blinded_bytes), params);
            transcript.put("trapdoor/" + tag + "/trapdoor", flow.trapdoor.encode());
            flows.push_back(std::move(flow));
        }
    }
    report.records = ledger.size();

    // PEKS over the vocabulary (one ciphertext per keyword for the matrix)
    std::vector<Ciphertext> matrix_cts;
    matrix_cts.reserve(cfg.n);
    for (size_t k = 0; k < cfg.n; ++k) {
        Drbg prng = root.fork("peks:" + vocab[k]);
        Ciphertext ct = peks_encrypt(tgc.pk, vocab[k], params, prng);
        Bytes ct_bytes = ct.encode();
        transcript.put("peks/" + vocab[k], ct_bytes);
        matrix_cts.push_back(Ciphertext::decode(ct_bytes));
    }

    // Test matrix: every trapdoor against every vocabulary ciphertext,
    // plus a fresh matched ciphertext per flow.
    for (size_t f = 0; f < flows.size(); ++f) {
        const Flow& flow = flows[f];
        Drbg prng = root.fork("peks-fresh:" + std::to_string(f));
        Ciphertext fresh = peks_encrypt(tgc.pk, vocab[flow.keyword_idx], params, prng);
        require(test_match(flow.trapdoor, fresh, params),
                "fresh matched pair returned 0 (keyword search product check)");
        report.matched_tests++;
        for (size_t k = 0; k < cfg.n; ++k) {
            bool hit = test_match(flow.trapdoor, matrix_cts[k], params);
            if (k == flow.keyword_idx) {
                require(hit, "matrix diagonal returned 0 (keyword search product check)");
                report.matched_tests++;
            } else {
                require(!hit, "matrix off-diagonal returned 1 (keyword search product check)");
                report.mismatched_tests++;
            }
        }
    }

    // Record validation + trace for every ledgered record
    for (const Flow& flow : flows) {
        TrapdoorRecord rec = TrapdoorRecord::decode(ledger.fetch(flow.block_idx).payload);
        require(record_validate(rec, ca_pk, tr.Yt, params),
                "ledgered record failed validation (proof or credential check)");
        TraceResult tres = trace(rec, tr.xt, sr.table, id_table);
        require(tres.id == users[flow.user_idx].keys.id,
                "trace returned the wrong identity");
        require(tres.keyword == vocab[flow.keyword_idx], "trace returned the wrong keyword");
        report.traces++;
    }

    report.ledger_ok = ledger.verify_chain();
    require(report.ledger_ok, "untampered ledger failed chain verification");

    if (cfg.tamper) {
        auto [blk, bit] = *cfg.tamper;
        require(blk < ledger.size(), "tamper block index out of range");
        Ledger tampered = ledger;
        Bytes& payload = tampered.raw_blocks()[blk].payload;
        require(!payload.empty(), "tamper target payload empty");
        payload[(bit / 8) % payload.size()] ^= static_cast<uint8_t>(1u << (bit % 8));
        report.tamper_detected = !tampered.verify_chain();
        require(report.tamper_detected, "tampered ledger still verifies");
    }

    Digest tip = ledger.tip_hash();
    report.ledger_tip_hex = to_hex(Bytes(tip.begin(), tip.end()));
    report.transcript_digest_hex = transcript.digest_hex();

    if (!cfg.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(cfg.out_dir);
        ledger.save((fs::path(cfg.out_dir) / "ledger.bin").string());
        sr.table.save((fs::path(cfg.out_dir) / "table_omega.txt").string());
        id_table.save((fs::path(cfg.out_dir) / "table_id.txt").string());
        if (cfg.dump_transcripts) transcript.dump((fs::path(cfg.out_dir) / "transcripts").string());
    }
    return report;
}

std::string ScenarioReport::to_table() const {
    std::ostringstream os;
    os << "matched tests      " << matched_tests << "\n"
       << "mismatched tests   " << mismatched_tests << "\n"
       << "ledgered records   " << records << "\n"
       << "traced records     " << traces << "\n"
       << "ledger verified    " << (ledger_ok ? "yes" : "NO") << "\n"
       << "ledger tip         " << ledger_tip_hex << "\n"
       << "transcript digest  " << transcript_digest_hex << "\n";
    return os.str();
}

// ---- bench ----

namespace {

using Clock = std::chrono::steady_clock;

double time_once(const std::function<void()>& fn) {
    auto t0 = Clock::now();
    fn();
    auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

double median_of(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

}  // namespace

double BenchReport::total_ms(const std::string& algorithm, size_t n) const {
    for (const BenchRow& r : rows)
        if (r.n == n && r.algorithm == algorithm) return r.total_ms;
    throw std::out_of_range("no bench row for " + algorithm);
}

BenchReport run_bench(const BenchConfig& cfg) {
    BenchReport report;
    const SystemParams& params = SystemParams::standard();  // derivation outside all timers

    for (size_t n : cfg.n_values) {
        Drbg root(cfg.seed + n);
        std::vector<std::string> vocab = make_vocabulary(n);

        auto add_row = [&](const std::string& alg, size_t ops,
                           const std::function<void()>& fn) {
            std::vector<double> samples;
            for (size_t rep = 0; rep < cfg.repeats; ++rep) samples.push_back(time_once(fn));
            BenchRow row;
            row.n = n;
            row.algorithm = alg;
            row.total_ms = median_of(std::move(samples));
            row.ops = ops;
            row.per_op_ms = row.total_ms / static_cast<double>(ops);
            report.rows.push_back(std::move(row));
        };

        // Setup: keyword table construction over n keywords
        KeywordTable table = KeywordTable::build(vocab, params);
        add_row("setup", n, [&] {
            KeywordTable t = KeywordTable::build(vocab, params);
            if (t.size() != n) throw ScenarioError("setup produced a short table");
        });

        // KeyGen: all four key generations
        Drbg kg_rng = root.fork("keygen");
        constexpr size_t kKeygenBatch = 5;
        add_row("keygen", kKeygenBatch, [&] {
            for (size_t i = 0; i < kKeygenBatch; ++i) {
                CaKeyPair ca = CaKeyPair::generate(params, kg_rng);
                TgcKeyPair tg = keygen_tgc(params, kg_rng);
                TracerKeyPair tr = keygen_tr(params, kg_rng);
                UserKeyPair u = keygen_user("bench", params, kg_rng);
                if (ca.X.is_identity() || tg.pk.nu1.is_identity() || tr.Yt.is_identity() ||
                    u.Yu.is_identity())
                    throw ScenarioError("keygen produced a degenerate key");
            }
        });

        Drbg setup_rng = root.fork("fixture");
        CaKeyPair ca = CaKeyPair::generate(params, setup_rng);
        CaPublicKey ca_pk{ca.X, ca.Y};
        TgcKeyPair tgc = keygen_tgc(params, setup_rng);
        TracerKeyPair tr = keygen_tr(params, setup_rng);
        UserKeyPair user = keygen_user("bench-user", params, setup_rng);
        PaillierKeyPair paillier = PaillierKeyPair::generate(2048, setup_rng);

        // Reg: request + issue, correctness asserted via the issued triple
        IdTable reg_table;
        Credential cred;
        constexpr size_t kRegBatch = 5;
        Drbg reg_rng = root.fork("reg");
        add_row("reg", kRegBatch, [&] {
            for (size_t i = 0; i < kRegBatch; ++i) {
                RegRequest req = reg_request(user, params, reg_rng);
                cred = reg_issue(ca, req, reg_table, params, reg_rng);
            }
        });
        require(show_verify(randomize(cred, Scalar::from_u64(2), Scalar::from_u64(3)), ca_pk,
                            params),
                "issued credential fails presentation check");

        // Trapdoor: one full blind flow per iteration
        Ledger ledger;
        Trapdoor blind_trapdoor;
        Drbg flow_rng = root.fork("flow");
        add_row("trapdoor", 1, [&] {
            TrapdoorRequestResult req = trapdoor_request(user, paillier, cred, vocab[0], tr.Yt,
                                                         ca_pk, params, flow_rng);
            TrapdoorRespondResult resp =
                trapdoor_respond(tgc, ca_pk, tr.Yt, req.record, req.msg1, ledger,
                                 kTimestampBase + static_cast<int64_t>(ledger.size()), params,
                                 flow_rng);
            TppMsg3 m3 = trapdoor_user_round3(req.session, resp.msg2);
            BlindedTrapdoor blinded = trapdoor_complete(tgc, resp.session, m3, params);
            blind_trapdoor = trapdoor_finalize(req.session, blinded, params);
        });
        report.record_payload_bytes = ledger.fetch(0).payload.size();

        // PEKS: n encryptions
        std::vector<Ciphertext> cts;
        Drbg peks_rng = root.fork("peks");
        add_row("peks", n, [&] {
            cts.clear();
            for (size_t k = 0; k < n; ++k)
                cts.push_back(peks_encrypt(tgc.pk, vocab[k], params, peks_rng));
        });

        // Test: one trapdoor over the n ciphertexts (index 0 must match)
        add_row("test", n, [&] {
            size_t hits = 0;
            for (size_t k = 0; k < n; ++k)
                if (test_match(blind_trapdoor, cts[k], params)) ++hits;
            if (hits != 1 || !test_match(blind_trapdoor, cts[0], params))
                throw ScenarioError("test matrix row mismatched during bench");
        });

        // Record-Validation: one ledgered record
        TrapdoorRecord rec = TrapdoorRecord::decode(ledger.fetch(0).payload);
        constexpr size_t kValidateBatch = 5;
        add_row("validate", kValidateBatch, [&] {
            for (size_t i = 0; i < kValidateBatch; ++i)
                if (!record_validate(rec, ca_pk, tr.Yt, params))
                    throw ScenarioError("record validation failed during bench");
        });

        // Trace: one record against the tables
        IdTable id_table;
        id_table.insert(user.id, user.Yu);
        constexpr size_t kTraceBatch = 50;
        add_row("trace", kTraceBatch, [&] {
            for (size_t i = 0; i < kTraceBatch; ++i) {
                TraceResult tres = trace(rec, tr.xt, table, id_table);
                if (tres.id != user.id || tres.keyword != vocab[0])
                    throw ScenarioError("trace returned wrong identity or keyword during bench");
            }
        });
    }
    report.ok = true;
    return report;
}

std::string BenchReport::to_table() const {
    std::ostringstream os;
    os << "  n  algorithm   total_ms     ops   per_op_ms\n";
    for (const BenchRow& r : rows) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%3zu  %-10s %9.3f  %6zu  %10.4f\n", r.n,
                      r.algorithm.c_str(), r.total_ms, r.ops, r.per_op_ms);
        os << buf;
    }
    os << "record payload bytes: " << record_payload_bytes << "\n";
    return os.str();
}

std::string BenchReport::to_tsv() const {
    std::ostringstream os;
    os << "n\talgorithm\ttotal_ms\tops\tper_op_ms\n";
    for (const BenchRow& r : rows)
        os << r.n << '\t' << r.algorithm << '\t' << r.total_ms << '\t' << r.ops << '\t'
           << r.per_op_ms << '\n';
    os << "# record_payload_bytes\t" << record_payload_bytes << '\n';
    return os.str();
}

}  // namespace bpks
