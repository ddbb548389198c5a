#include "bp3ksest/bytes.hpp"

namespace bpks {

std::string to_hex(const Bytes& data) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("hex string has odd length");
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        int hi = hex_nibble(hex[2 * i]);
        int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex digit");
        out[i] = static_cast<uint8_t>(hi << 4 | lo);
    }
    return out;
}

void ByteWriter::put_u32(uint32_t v) {
    buf_.push_back(static_cast<uint8_t>(v >> 24));
    buf_.push_back(static_cast<uint8_t>(v >> 16));
    buf_.push_back(static_cast<uint8_t>(v >> 8));
    buf_.push_back(static_cast<uint8_t>(v));
}

void ByteWriter::put_u64(uint64_t v) {
    put_u32(static_cast<uint32_t>(v >> 32));
    put_u32(static_cast<uint32_t>(v));
}

void ByteWriter::put_lp(const Bytes& data) {
    put_u32(static_cast<uint32_t>(data.size()));
    put_raw(data);
}

void ByteWriter::put_lp(std::string_view data) {
    put_u32(static_cast<uint32_t>(data.size()));
    buf_.insert(buf_.end(), data.begin(), data.end());
}

void ByteReader::need(size_t n) const {
    if (size_ - pos_ < n) throw std::invalid_argument("truncated message");
}

uint8_t ByteReader::get_u8() {
    need(1);
    return data_[pos_++];
}

uint32_t ByteReader::get_u32() {
    need(4);
    uint32_t v = static_cast<uint32_t>(data_[pos_]) << 24 |
                 static_cast<uint32_t>(data_[pos_ + 1]) << 16 |
                 static_cast<uint32_t>(data_[pos_ + 2]) << 8 |
                 static_cast<uint32_t>(data_[pos_ + 3]);
    pos_ += 4;
    return v;
}

uint64_t ByteReader::get_u64() {
    uint64_t hi = get_u32();
    return hi << 32 | get_u32();
}

Bytes ByteReader::get_raw(size_t len) {
    need(len);
    Bytes out(data_ + pos_, data_ + pos_ + len);
    pos_ += len;
    return out;
}

Bytes ByteReader::get_lp() {
    uint32_t len = get_u32();
    return get_raw(len);
}

std::string ByteReader::get_lp_string() {
    Bytes raw = get_lp();
    return std::string(raw.begin(), raw.end());
}

void ByteReader::finish() const {
    if (pos_ != size_) throw std::invalid_argument("trailing bytes after message");
}

}  // namespace bpks
