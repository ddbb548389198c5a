#include <doctest.h>

#include <filesystem>

#include "bp3ksest/scenario.hpp"

using namespace bpks;

TEST_SUITE_BEGIN("harness");

TEST_CASE("scenario: full matrix diagonal/off-diagonal outcome") {
    ScenarioConfig cfg;
    cfg.n = 10;
    cfg.users = 2;
    cfg.queries = 1;
    cfg.seed = 7;
    ScenarioReport report = run_scenario(cfg);
    // two flows: one fresh matched pair + one diagonal entry each
    CHECK(report.matched_tests == 4);
    CHECK(report.mismatched_tests == 2 * 9);
    CHECK(report.records == 2);
    CHECK(report.traces == 2);
    CHECK(report.ledger_ok);
}

TEST_CASE("scenario: seeded runs are reproducible") {
    ScenarioConfig cfg;
    cfg.n = 5;
    cfg.users = 1;
    cfg.queries = 2;
    cfg.seed = 11;
    ScenarioReport a = run_scenario(cfg);
    ScenarioReport b = run_scenario(cfg);
    CHECK(a.transcript_digest_hex == b.transcript_digest_hex);
    CHECK(a.ledger_tip_hex == b.ledger_tip_hex);

    cfg.seed = 12;
    ScenarioReport c = run_scenario(cfg);
    CHECK(c.transcript_digest_hex != a.transcript_digest_hex);
}

TEST_CASE("scenario: tamper injection is detected") {
    ScenarioConfig cfg;
    cfg.n = 4;
    cfg.users = 1;
    cfg.queries = 1;
    cfg.seed = 3;
    cfg.tamper = {{0, 17}};
    ScenarioReport report = run_scenario(cfg);
    CHECK(report.tamper_detected);
    CHECK(report.ledger_ok);  // the real ledger is untouched
}

TEST_CASE("scenario: output files are written") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "bp3ksest-harness-test";
    fs::remove_all(dir);

    ScenarioConfig cfg;
    cfg.n = 4;
    cfg.users = 1;
    cfg.queries = 1;
    cfg.seed = 3;
    cfg.out_dir = dir.string();
    cfg.dump_transcripts = true;
    run_scenario(cfg);

    CHECK(fs::exists(dir / "ledger.bin"));
    CHECK(fs::exists(dir / "table_omega.txt"));
    CHECK(fs::exists(dir / "table_id.txt"));
    CHECK(fs::is_directory(dir / "transcripts"));
    size_t files = 0;
    for (auto& _ : fs::directory_iterator(dir / "transcripts")) ++files, (void)_;
    CHECK(files > 8);

    Ledger l = Ledger::load((dir / "ledger.bin").string());
    CHECK(l.size() == 1);
    fs::remove_all(dir);
}

TEST_CASE("bench: small run produces consistent rows") {
    BenchConfig cfg;
    cfg.n_values = {2, 3};
    cfg.repeats = 1;
    BenchReport report = run_bench(cfg);
    CHECK(report.ok);
    CHECK(report.record_payload_bytes > 1000);
    CHECK(report.total_ms("setup", 2) > 0);
    CHECK(report.total_ms("trapdoor", 3) > 0);
    CHECK_THROWS_AS(report.total_ms("nope", 2), std::out_of_range);
    // 8 algorithms x 2 vocabulary sizes
    CHECK(report.rows.size() == 16);
    CHECK(report.to_tsv().find("per_op_ms") != std::string::npos);
}

TEST_SUITE_END();
