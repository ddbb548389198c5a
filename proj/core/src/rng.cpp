#include "bp3ksest/rng.hpp"

#include <stdexcept>

namespace bpks {

namespace {

Digest derive_key(const Bytes& seed) { return sha256(seed); }

}  // namespace

Drbg::Drbg(uint64_t seed) {
    ByteWriter w;
    w.put_lp(std::string_view("BP3KSEST/drbg"));
    w.put_u64(seed);
    key_ = derive_key(w.bytes());
}

Drbg::Drbg(const Bytes& seed) {
    ByteWriter w;
    w.put_lp(std::string_view("BP3KSEST/drbg"));
    w.put_lp(seed);
    key_ = derive_key(w.bytes());
}

Drbg Drbg::fork(std::string_view label) const {
    ByteWriter w;
    w.put_raw(key_.data(), key_.size());
    w.put_u8(0x01);
    w.put_lp(label);
    return Drbg(sha256(w.bytes()));
}

void Drbg::fill(uint8_t* out, size_t len) {
    while (len > 0) {
        if (block_used_ == 32) {
            ByteWriter w;
            w.put_raw(key_.data(), key_.size());
            w.put_u8(0x00);
            w.put_u64(counter_++);
            block_ = sha256(w.bytes());
            block_used_ = 0;
        }
        size_t take = std::min(len, size_t{32} - block_used_);
        std::memcpy(out, block_.data() + block_used_, take);
        block_used_ += take;
        out += take;
        len -= take;
    }
}

Bytes Drbg::bytes(size_t len) {
    Bytes out(len);
    fill(out.data(), len);
    return out;
}

uint64_t Drbg::u64() {
    uint8_t buf[8];
    fill(buf, 8);
    uint64_t v = 0;
    for (uint8_t b : buf) v = v << 8 | b;
    return v;
}

mpz_class Drbg::below(const mpz_class& bound) {
    if (bound <= 0) throw std::invalid_argument("bound must be positive");
    size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    size_t nbytes = (bits + 7) / 8;
    unsigned top_mask = bits % 8 == 0 ? 0xff : (1u << (bits % 8)) - 1;
    Bytes buf(nbytes);
    mpz_class v;
    while (true) {
        fill(buf.data(), buf.size());
        buf[0] &= static_cast<uint8_t>(top_mask);
        mpz_import(v.get_mpz_t(), buf.size(), 1, 1, 1, 0, buf.data());
        if (v < bound) return v;
    }
}

mpz_class Drbg::below_nonzero(const mpz_class& bound) {
    while (true) {
        mpz_class v = below(bound);
        if (v != 0) return v;
    }
}

}  // namespace bpks
