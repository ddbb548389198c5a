#ifndef BP3KSEST_BYTES_HPP
#define BP3KSEST_BYTES_HPP

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bpks {

using Bytes = std::vector<uint8_t>;

std::string to_hex(const Bytes& data);
Bytes from_hex(std::string_view hex);

// Canonical message framing: every variable-length field is prefixed with a
// 4-byte big-endian length. Fixed-width integers are written big-endian.
class ByteWriter {
public:
    void put_u8(uint8_t v) { buf_.push_back(v); }
    void put_u32(uint32_t v);
    void put_u64(uint64_t v);
    void put_raw(const Bytes& data) { buf_.insert(buf_.end(), data.begin(), data.end()); }
    void put_raw(const uint8_t* data, size_t len) { buf_.insert(buf_.end(), data, data + len); }
    void put_lp(const Bytes& data);
    void put_lp(std::string_view data);

    const Bytes& bytes() const { return buf_; }
    Bytes take() { return std::move(buf_); }

private:
    Bytes buf_;
};

// Strict reader: all reads are bounds-checked and decoding must consume the
// whole buffer (callers invoke finish()). Does not own the buffer, which
// must outlive the reader; temporaries are rejected at compile time.
class ByteReader {
public:
    explicit ByteReader(const Bytes& data) : data_(data.data()), size_(data.size()) {}
    explicit ByteReader(Bytes&&) = delete;
    ByteReader(const uint8_t* data, size_t size) : data_(data), size_(size) {}

    uint8_t get_u8();
    uint32_t get_u32();
    uint64_t get_u64();
    Bytes get_raw(size_t len);
    Bytes get_lp();
    std::string get_lp_string();

    size_t remaining() const { return size_ - pos_; }
    void finish() const;

private:
    void need(size_t n) const;
    const uint8_t* data_;
    size_t size_;
    size_t pos_ = 0;
};

}  // namespace bpks

#endif
