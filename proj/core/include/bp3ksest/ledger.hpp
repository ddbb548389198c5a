#ifndef BP3KSEST_LEDGER_HPP
#define BP3KSEST_LEDGER_HPP

#include <string>
#include <vector>

#include "bp3ksest/hash.hpp"

namespace bpks {

// Append-only hash chain. Single writer; readers see immutable blocks.
struct Block {
    uint64_t index = 0;
    Digest prev_hash{};
    int64_t timestamp = 0;
    Bytes payload;
    Digest hash{};

    // SHA-256 over the length-prefixed fields.
    static Digest compute_hash(uint64_t index, const Digest& prev_hash, int64_t timestamp,
                               const Bytes& payload);
    Bytes encode() const;
    static Block decode(const Bytes& in);
};

class Ledger {
public:
    // Timestamps are injected by the caller so runs stay reproducible.
    const Block& append(Bytes payload, int64_t timestamp);

    // True iff all block hashes recompute and every prev_hash links.
    bool verify_chain() const;

    const Block& fetch(size_t index) const;  // throws std::out_of_range
    size_t size() const { return blocks_.size(); }
    bool empty() const { return blocks_.empty(); }
    // Digest of the last block (all zeros for an empty chain).
    Digest tip_hash() const;

    // One file, length-prefixed blocks. load verifies the chain before use.
    void save(const std::string& path) const;
    static Ledger load(const std::string& path);

    // Test access for tamper experiments.
    std::vector<Block>& raw_blocks() { return blocks_; }
    const std::vector<Block>& raw_blocks() const { return blocks_; }

private:
    std::vector<Block> blocks_;
};

}  // namespace bpks

#endif
