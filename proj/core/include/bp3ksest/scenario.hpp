#ifndef BP3KSEST_SCENARIO_HPP
#define BP3KSEST_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "bp3ksest/scheme.hpp"

namespace bpks {

// All parties run in-process as state machines; every protocol message is
// serialized through a transcript channel so the wire formats are exercised
// end to end and runs can be compared byte for byte.

struct ScenarioConfig {
    size_t n = 10;        // vocabulary size
    size_t users = 2;
    size_t queries = 1;   // trapdoor flows per user
    uint64_t seed = 7;
    std::string out_dir;  // when set: ledger + tables (+ transcripts) are written here
    bool dump_transcripts = false;
    std::optional<std::pair<size_t, size_t>> tamper;  // (block, bit): fault injection probe
};

struct ScenarioReport {
    size_t matched_tests = 0;     // diagonal entries that returned 1
    size_t mismatched_tests = 0;  // off-diagonal entries that returned 0
    size_t records = 0;
    size_t traces = 0;
    std::string transcript_digest_hex;
    std::string ledger_tip_hex;
    bool ledger_ok = false;
    bool tamper_detected = false;  // only meaningful when cfg.tamper is set

    std::string to_table() const;
};

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runs setup -> keygen x4 -> registration -> blind trapdoor flows -> PEKS
// over the vocabulary -> full test matrix -> record validation -> trace.
// Throws ScenarioError with a diagnostic naming the failing check if any
// honest step is rejected.
ScenarioReport run_scenario(const ScenarioConfig& cfg);

struct BenchConfig {
    std::vector<size_t> n_values{10, 20, 30, 40, 50};
    uint64_t seed = 1;
    size_t repeats = 3;  // median-of-repeats per data point
};

struct BenchRow {
    size_t n = 0;
    std::string algorithm;
    double total_ms = 0;   // one batch (see ops)
    size_t ops = 0;        // operations per batch
    double per_op_ms = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    size_t record_payload_bytes = 0;
    bool ok = false;

    // per-algorithm lookup, ms for the batch at vocabulary size n
    double total_ms(const std::string& algorithm, size_t n) const;
    std::string to_table() const;
    std::string to_tsv() const;
};

// Times the eight protocol algorithms at each vocabulary size. Every timed
// iteration asserts functional correctness before its timing is recorded.
BenchReport run_bench(const BenchConfig& cfg);

}  // namespace bpks

#endif
