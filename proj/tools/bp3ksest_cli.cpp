// Multi-party command line driver: every subcommand reads and writes the
// canonical file formats, so single steps can be scripted or the whole
// protocol replayed via `scenario`.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "bp3ksest/scenario.hpp"

namespace fs = std::filesystem;
using namespace bpks;

namespace {

Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const Bytes& data) {
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_text(const std::string& path, const std::string& text) {
    write_file(path, Bytes(text.begin(), text.end()));
}

struct ScalarFile {
    static void save(const std::string& path, std::initializer_list<const Scalar*> scalars) {
        ByteWriter w;
        for (const Scalar* s : scalars) w.put_lp(s->encode());
        write_file(path, w.bytes());
    }
    static std::vector<Scalar> load(const std::string& path, size_t count) {
        Bytes data = read_file(path);
        ByteReader r(data);
        std::vector<Scalar> out;
        for (size_t i = 0; i < count; ++i) out.push_back(Scalar::decode(r.get_lp()));
        r.finish();
        return out;
    }
};

UserKeyPair load_user_sk(const std::string& path, const SystemParams& params) {
    Bytes data = read_file(path);
    ByteReader r(data);
    UserKeyPair u;
    u.id = r.get_lp_string();
    u.xu = Scalar::decode(r.get_lp());
    r.finish();
    u.Yu = params.g.pow(u.xu);
    return u;
}

void save_user_sk(const std::string& path, const UserKeyPair& u) {
    ByteWriter w;
    w.put_lp(u.id);
    w.put_lp(u.xu.encode());
    write_file(path, w.bytes());
}

TgcKeyPair load_tgc_sk(const std::string& path, const SystemParams& params) {
    std::vector<Scalar> t = ScalarFile::load(path, 5);
    TgcKeyPair kp;
    std::copy(t.begin(), t.end(), kp.t.begin());
    kp.pk.Omega = pair(params.g, params.g).pow(kp.t[0] * kp.t[1] * kp.t[2]);
    kp.pk.nu1 = params.g.pow(kp.t[1]);
    kp.pk.nu2 = params.g.pow(kp.t[2]);
    kp.pk.nu3 = params.g.pow(kp.t[3]);
    kp.pk.nu4 = params.g.pow(kp.t[4]);
    return kp;
}

CaKeyPair load_ca_sk(const std::string& path, const SystemParams& params) {
    std::vector<Scalar> xy = ScalarFile::load(path, 2);
    CaKeyPair kp;
    kp.x = xy[0];
    kp.y = xy[1];
    kp.X = params.g.pow(kp.x);
    kp.Y = params.g.pow(kp.y);
    return kp;
}

Ledger load_or_create_ledger(const std::string& path) {
    if (fs::exists(path)) return Ledger::load(path);
    return Ledger{};
}

constexpr int64_t kTimestampBase = 1700000000;

std::vector<std::string> read_keyword_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open keyword file: " + path);
    std::vector<std::string> kws;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) kws.push_back(line);
    return kws;
}

std::vector<std::string> default_vocabulary(size_t n) {
    std::vector<std::string> kws;
    for (size_t i = 0; i < n; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "kw-%03zu", i);
        kws.emplace_back(buf);
    }
    return kws;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"BP3KSEST protocol driver"};
    app.require_subcommand(1);

    std::string out_dir = "out";
    size_t n = 10;
    size_t users = 2;
    size_t queries = 1;
    uint64_t seed = 7;

    // setup
    auto* cmd_setup = app.add_subcommand("setup", "derive parameters and the keyword table");
    std::string keywords_file;
    cmd_setup->add_option("--n", n, "vocabulary size (generated names)");
    cmd_setup->add_option("--keywords", keywords_file, "file with one keyword per line");
    cmd_setup->add_option("--out", out_dir, "output directory");

    // keygen
    auto* cmd_keygen = app.add_subcommand("keygen", "generate a party key pair");
    std::string role, user_id = "user-000";
    cmd_keygen->add_option("--role", role, "ca|tgc|tr|user")->required();
    cmd_keygen->add_option("--id", user_id, "identity (role user)");
    cmd_keygen->add_option("--seed", seed, "rng seed");
    cmd_keygen->add_option("--out", out_dir, "output directory");

    // register
    auto* cmd_register = app.add_subcommand("register", "run the registration exchange");
    std::string user_sk_path, ca_sk_path, id_table_path, credential_path;
    cmd_register->add_option("--user-sk", user_sk_path)->required();
    cmd_register->add_option("--ca-sk", ca_sk_path)->required();
    cmd_register->add_option("--id-table", id_table_path)->required();
    cmd_register->add_option("--credential", credential_path)->required();
    cmd_register->add_option("--seed", seed, "rng seed");

    // trapdoor
    auto* cmd_trapdoor = app.add_subcommand("trapdoor", "run the blind trapdoor exchange");
    std::string tgc_sk_path, tr_pk_path, ca_pk_path, ledger_path, trapdoor_path, keyword;
    cmd_trapdoor->add_option("--user-sk", user_sk_path)->required();
    cmd_trapdoor->add_option("--credential", credential_path)->required();
    cmd_trapdoor->add_option("--tgc-sk", tgc_sk_path)->required();
    cmd_trapdoor->add_option("--tr-pk", tr_pk_path)->required();
    cmd_trapdoor->add_option("--ca-pk", ca_pk_path)->required();
    cmd_trapdoor->add_option("--keyword", keyword)->required();
    cmd_trapdoor->add_option("--ledger", ledger_path)->required();
    cmd_trapdoor->add_option("--trapdoor", trapdoor_path)->required();
    cmd_trapdoor->add_option("--seed", seed, "rng seed");

    // peks
    auto* cmd_peks = app.add_subcommand("peks", "encrypt a keyword");
    std::string tgc_pk_path, ciphertext_path;
    cmd_peks->add_option("--tgc-pk", tgc_pk_path)->required();
    cmd_peks->add_option("--keyword", keyword)->required();
    cmd_peks->add_option("--ciphertext", ciphertext_path)->required();
    cmd_peks->add_option("--seed", seed, "rng seed");

    // test
    auto* cmd_test = app.add_subcommand("test", "match a trapdoor against a ciphertext");
    cmd_test->add_option("--trapdoor", trapdoor_path)->required();
    cmd_test->add_option("--ciphertext", ciphertext_path)->required();

    // validate
    auto* cmd_validate = app.add_subcommand("validate", "validate a ledgered record");
    size_t block_index = 0;
    std::string record_path;
    cmd_validate->add_option("--ledger", ledger_path);
    cmd_validate->add_option("--index", block_index, "block index");
    cmd_validate->add_option("--record", record_path, "record file (alternative to --ledger)");
    cmd_validate->add_option("--ca-pk", ca_pk_path)->required();
    cmd_validate->add_option("--tr-pk", tr_pk_path)->required();

    // trace
    auto* cmd_trace = app.add_subcommand("trace", "de-anonymise a ledgered record");
    std::string tr_sk_path, kw_table_path;
    cmd_trace->add_option("--ledger", ledger_path)->required();
    cmd_trace->add_option("--index", block_index, "block index")->required();
    cmd_trace->add_option("--tr-sk", tr_sk_path)->required();
    cmd_trace->add_option("--ca-pk", ca_pk_path)->required();
    cmd_trace->add_option("--tr-pk", tr_pk_path)->required();
    cmd_trace->add_option("--keyword-table", kw_table_path)->required();
    cmd_trace->add_option("--id-table", id_table_path)->required();

    // scenario
    auto* cmd_scenario = app.add_subcommand("scenario", "run the full multi-party scenario");
    std::string tamper_spec;
    bool dump_transcripts = false;
    cmd_scenario->add_option("--n", n, "vocabulary size");
    cmd_scenario->add_option("--users", users, "user count");
    cmd_scenario->add_option("--queries", queries, "trapdoor flows per user");
    cmd_scenario->add_option("--seed", seed, "rng seed");
    cmd_scenario->add_option("--out", out_dir, "output directory");
    cmd_scenario->add_flag("--dump-transcripts", dump_transcripts,
                           "write every protocol message to <out>/transcripts/");
    cmd_scenario->add_option("--tamper", tamper_spec, "block:bit fault injection probe");

    // bench
    auto* cmd_bench = app.add_subcommand("bench", "time the eight algorithms per vocabulary size");
    std::vector<size_t> n_values;
    size_t repeats = 3;
    cmd_bench->add_option("--n", n_values, "vocabulary sizes (repeatable)");
    cmd_bench->add_option("--seed", seed, "rng seed");
    cmd_bench->add_option("--repeats", repeats, "median-of-k repetitions");
    cmd_bench->add_option("--out", out_dir, "output directory for bench.tsv");

    CLI11_PARSE(app, argc, argv);

    try {
        const SystemParams& params = SystemParams::standard();

        if (*cmd_setup) {
            std::vector<std::string> kws =
                keywords_file.empty() ? default_vocabulary(n) : read_keyword_lines(keywords_file);
            SetupResult sr = setup(kws);
            fs::create_directories(out_dir);
            write_file((fs::path(out_dir) / "params.bin").string(), sr.params.encode());
            sr.table.save((fs::path(out_dir) / "table_omega.txt").string());
            std::cout << "table entries: " << sr.table.size() << "\n";
            return 0;
        }

        if (*cmd_keygen) {
            Drbg rng(seed);
            fs::create_directories(out_dir);
            if (role == "ca") {
                CaKeyPair kp = CaKeyPair::generate(params, rng);
                ScalarFile::save((fs::path(out_dir) / "ca.sk").string(), {&kp.x, &kp.y});
                write_file((fs::path(out_dir) / "ca.pk").string(), CaPublicKey{kp.X, kp.Y}.encode());
            } else if (role == "tgc") {
                TgcKeyPair kp = keygen_tgc(params, rng);
                ScalarFile::save((fs::path(out_dir) / "tgc.sk").string(),
                                 {&kp.t[0], &kp.t[1], &kp.t[2], &kp.t[3], &kp.t[4]});
                write_file((fs::path(out_dir) / "tgc.pk").string(), kp.pk.encode());
            } else if (role == "tr") {
                TracerKeyPair kp = keygen_tr(params, rng);
                ScalarFile::save((fs::path(out_dir) / "tr.sk").string(), {&kp.xt});
                write_file((fs::path(out_dir) / "tr.pk").string(), kp.Yt.encode());
            } else if (role == "user") {
                UserKeyPair kp = keygen_user(user_id, params, rng);
                save_user_sk((fs::path(out_dir) / (user_id + ".sk")).string(), kp);
                ByteWriter w;
                w.put_lp(kp.id);
                w.put_lp(kp.Yu.encode());
                write_file((fs::path(out_dir) / (user_id + ".pk")).string(), w.bytes());
            } else {
                std::cerr << "unknown role: " << role << "\n";
                return 2;
            }
            return 0;
        }

        if (*cmd_register) {
            Drbg rng(seed);
            UserKeyPair user = load_user_sk(user_sk_path, params);
            CaKeyPair ca = load_ca_sk(ca_sk_path, params);
            IdTable table;
            if (fs::exists(id_table_path)) table = IdTable::load(id_table_path);
            RegRequest req = reg_request(user, params, rng);
            Credential cred = reg_issue(ca, req, table, params, rng);
            table.save(id_table_path);
            write_file(credential_path, cred.encode());
            std::cout << "registered " << user.id << "\n";
            return 0;
        }

        if (*cmd_trapdoor) {
            Drbg rng(seed);
            UserKeyPair user = load_user_sk(user_sk_path, params);
            Credential cred = Credential::decode(read_file(credential_path));
            TgcKeyPair tgc = load_tgc_sk(tgc_sk_path, params);
            GroupElem Yt = GroupElem::decode(read_file(tr_pk_path));
            CaPublicKey ca_pk = CaPublicKey::decode(read_file(ca_pk_path));
            Ledger ledger = load_or_create_ledger(ledger_path);

            // session-scoped homomorphic keypair, derived from the seed
            Drbg paillier_rng = rng.fork("paillier");
            PaillierKeyPair paillier = PaillierKeyPair::generate(2048, paillier_rng);

            TrapdoorRequestResult req =
                trapdoor_request(user, paillier, cred, keyword, Yt, ca_pk, params, rng);
            TrapdoorRespondResult resp = trapdoor_respond(
                tgc, ca_pk, Yt, req.record, req.msg1, ledger,
                kTimestampBase + static_cast<int64_t>(ledger.size()), params, rng);
            TppMsg3 m3 = trapdoor_user_round3(req.session, resp.msg2);
            BlindedTrapdoor blinded = trapdoor_complete(tgc, resp.session, m3, params);
            Trapdoor t = trapdoor_finalize(req.session, blinded, params);

            ledger.save(ledger_path);
            write_file(trapdoor_path, t.encode());
            std::cout << "record block " << ledger.size() - 1 << ", ledger tip "
                      << to_hex(Bytes(ledger.tip_hash().begin(), ledger.tip_hash().end())) << "\n";
            return 0;
        }

        if (*cmd_peks) {
            Drbg rng(seed);
            TgcPublicKey tgc_pk = TgcPublicKey::decode(read_file(tgc_pk_path));
            Ciphertext c = peks_encrypt(tgc_pk, keyword, params, rng);
            write_file(ciphertext_path, c.encode());
            return 0;
        }

        if (*cmd_test) {
            Trapdoor t = Trapdoor::decode(read_file(trapdoor_path));
            Ciphertext c = Ciphertext::decode(read_file(ciphertext_path));
            std::cout << (test_match(t, c, params) ? 1 : 0) << "\n";
            return 0;
        }

        if (*cmd_validate) {
            CaPublicKey ca_pk = CaPublicKey::decode(read_file(ca_pk_path));
            GroupElem Yt = GroupElem::decode(read_file(tr_pk_path));
            int valid = 0;
            try {
                TrapdoorRecord rec =
                    record_path.empty()
                        ? TrapdoorRecord::decode(Ledger::load(ledger_path).fetch(block_index).payload)
                        : TrapdoorRecord::decode(read_file(record_path));
                valid = record_validate(rec, ca_pk, Yt, params) ? 1 : 0;
            } catch (const std::invalid_argument&) {
                valid = 0;  // malformed record
            }
            std::cout << valid << "\n";
            return 0;
        }

        if (*cmd_trace) {
            CaPublicKey ca_pk = CaPublicKey::decode(read_file(ca_pk_path));
            GroupElem Yt = GroupElem::decode(read_file(tr_pk_path));
            Scalar xt = ScalarFile::load(tr_sk_path, 1)[0];
            KeywordTable kw_table = KeywordTable::load(kw_table_path, params);
            IdTable id_table = IdTable::load(id_table_path);
            TrapdoorRecord rec =
                TrapdoorRecord::decode(Ledger::load(ledger_path).fetch(block_index).payload);
            if (!record_validate(rec, ca_pk, Yt, params)) {
                std::cerr << "record invalid\n";
                return 1;
            }
            TraceResult res = trace(rec, xt, kw_table, id_table);
            std::cout << res.id << " " << res.keyword << "\n";
            return 0;
        }

        if (*cmd_scenario) {
            ScenarioConfig cfg;
            cfg.n = n;
            cfg.users = users;
            cfg.queries = queries;
            cfg.seed = seed;
            cfg.out_dir = out_dir;
            cfg.dump_transcripts = dump_transcripts;
            if (!tamper_spec.empty()) {
                auto colon = tamper_spec.find(':');
                if (colon == std::string::npos)
                    throw std::runtime_error("--tamper expects block:bit");
                cfg.tamper = {std::stoul(tamper_spec.substr(0, colon)),
                              std::stoul(tamper_spec.substr(colon + 1))};
            }
            ScenarioReport report = run_scenario(cfg);
            std::cout << report.to_table();
            return 0;
        }

        if (*cmd_bench) {
            BenchConfig cfg;
            if (!n_values.empty()) cfg.n_values = n_values;
            cfg.seed = seed;
            cfg.repeats = repeats;
            BenchReport report = run_bench(cfg);
            std::cout << report.to_table();
            fs::create_directories(out_dir);
            write_text((fs::path(out_dir) / "bench.tsv").string(), report.to_tsv());
            return report.ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
