#include "bp3ksest/ledger.hpp"

#include <fstream>
#include <stdexcept>

namespace bpks {

Digest Block::compute_hash(uint64_t index, const Digest& prev_hash, int64_t timestamp,
                           const Bytes& payload) {
    ByteWriter w;
    ByteWriter idx;
    idx.put_u64(index);
    w.put_lp(idx.bytes());
    w.put_lp(Bytes(prev_hash.begin(), prev_hash.end()));
    ByteWriter ts;
    ts.put_u64(static_cast<uint64_t>(timestamp));
    w.put_lp(ts.bytes());
    w.put_lp(payload);
    return sha256(w.bytes());
}

Bytes Block::encode() const {
    ByteWriter w;
    w.put_u64(index);
    w.put_lp(Bytes(prev_hash.begin(), prev_hash.end()));
    w.put_u64(static_cast<uint64_t>(timestamp));
    w.put_lp(payload);
    w.put_lp(Bytes(hash.begin(), hash.end()));
    return w.take();
}

Block Block::decode(const Bytes& in) {
    ByteReader r(in);
    Block b;
    b.index = r.get_u64();
    Bytes prev = r.get_lp();
    if (prev.size() != 32) throw std::invalid_argument("bad prev_hash length");
    std::copy(prev.begin(), prev.end(), b.prev_hash.begin());
    b.timestamp = static_cast<int64_t>(r.get_u64());
    b.payload = r.get_lp();
    Bytes h = r.get_lp();
    if (h.size() != 32) throw std::invalid_argument("bad block hash length");
    std::copy(h.begin(), h.end(), b.hash.begin());
    r.finish();
    return b;
}

const Block& Ledger::append(Bytes payload, int64_t timestamp) {
    Block b;
    b.index = blocks_.size();
    b.prev_hash = blocks_.empty() ? Digest{} : blocks_.back().hash;
    b.timestamp = timestamp;
    b.payload = std::move(payload);
    b.hash = Block::compute_hash(b.index, b.prev_hash, b.timestamp, b.payload);
    blocks_.push_back(std::move(b));
    return blocks_.back();
}

bool Ledger::verify_chain() const {
    Digest prev{};
    for (size_t i = 0; i < blocks_.size(); ++i) {
        const Block& b = blocks_[i];
        if (b.index != i) return false;
        if (b.prev_hash != prev) return false;
        if (b.hash != Block::compute_hash(b.index, b.prev_hash, b.timestamp, b.payload))
            return false;
        prev = b.hash;
    }
    return true;
}

const Block& Ledger::fetch(size_t index) const {
    if (index >= blocks_.size()) throw std::out_of_range("block index out of range");
    return blocks_[index];
}

Digest Ledger::tip_hash() const { return blocks_.empty() ? Digest{} : blocks_.back().hash; }

void Ledger::save(const std::string& path) const {
    ByteWriter w;
    for (const Block& b : blocks_) w.put_lp(b.encode());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open ledger file for writing: " + path);
    const Bytes& data = w.bytes();
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("ledger write failed: " + path);
}

Ledger Ledger::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open ledger file: " + path);
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Ledger ledger;
    ByteReader r(data);
    while (r.remaining() > 0) ledger.blocks_.push_back(Block::decode(r.get_lp()));
    if (!ledger.verify_chain()) throw std::runtime_error("ledger file fails chain verification");
    return ledger;
}

}  // namespace bpks
