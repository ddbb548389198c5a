#include <benchmark/benchmark.h>

#include "bp3ksest/scheme.hpp"

using namespace bpks;

namespace {

struct Fixture {
    const SystemParams& params = SystemParams::standard();
    Drbg rng{90001};
    CaKeyPair ca = CaKeyPair::generate(params, rng);
    CaPublicKey ca_pk{ca.X, ca.Y};
    TgcKeyPair tgc = keygen_tgc(params, rng);
    TracerKeyPair tr = keygen_tr(params, rng);
    UserKeyPair user = keygen_user("bench", params, rng);
    PaillierKeyPair paillier = PaillierKeyPair::generate(2048, rng);
    Credential cred = issue(ca, user.Yu, params, rng);
    Ciphertext ct = peks_encrypt(tgc.pk, "kw", params, rng);
    Trapdoor td = extract_direct(tgc, "kw", params, rng);
};

Fixture& fx() {
    static Fixture f;
    return f;
}

void BM_pairing(benchmark::State& state) {
    Fixture& f = fx();
    GroupElem a = f.params.g.pow(Scalar::random(f.rng));
    GroupElem b = f.params.h1.pow(Scalar::random(f.rng));
    for (auto _ : state) benchmark::DoNotOptimize(pair(a, b));
}
BENCHMARK(BM_pairing);

void BM_group_exp(benchmark::State& state) {
    Fixture& f = fx();
    Scalar e = Scalar::random(f.rng);
    for (auto _ : state) benchmark::DoNotOptimize(f.params.g.pow(e));
}
BENCHMARK(BM_group_exp);

void BM_test_match(benchmark::State& state) {
    Fixture& f = fx();
    for (auto _ : state) benchmark::DoNotOptimize(test_match(f.td, f.ct, f.params));
}
BENCHMARK(BM_test_match);

void BM_peks_encrypt(benchmark::State& state) {
    Fixture& f = fx();
    for (auto _ : state) benchmark::DoNotOptimize(peks_encrypt(f.tgc.pk, "kw", f.params, f.rng));
}
BENCHMARK(BM_peks_encrypt);

void BM_paillier_encrypt(benchmark::State& state) {
    Fixture& f = fx();
    for (auto _ : state) benchmark::DoNotOptimize(f.paillier.encrypt(12345, f.rng));
}
BENCHMARK(BM_paillier_encrypt);

void BM_paillier_decrypt(benchmark::State& state) {
    Fixture& f = fx();
    HomCiphertext c = f.paillier.encrypt(12345, f.rng);
    for (auto _ : state) benchmark::DoNotOptimize(f.paillier.decrypt(c));
}
BENCHMARK(BM_paillier_decrypt);

void BM_pi2_prove_verify(benchmark::State& state) {
    Fixture& f = fx();
    for (auto _ : state) {
        TrapdoorRequestResult req = trapdoor_request(f.user, f.paillier, f.cred, "kw", f.tr.Yt,
                                                     f.ca_pk, f.params, f.rng);
        benchmark::DoNotOptimize(record_validate(req.record, f.ca_pk, f.tr.Yt, f.params));
    }
}
BENCHMARK(BM_pi2_prove_verify);

void BM_record_validate(benchmark::State& state) {
    Fixture& f = fx();
    TrapdoorRequestResult req =
        trapdoor_request(f.user, f.paillier, f.cred, "kw", f.tr.Yt, f.ca_pk, f.params, f.rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(record_validate(req.record, f.ca_pk, f.tr.Yt, f.params));
}
BENCHMARK(BM_record_validate);

}  // namespace

BENCHMARK_MAIN();
