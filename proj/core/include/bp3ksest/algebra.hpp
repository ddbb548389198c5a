#ifndef BP3KSEST_ALGEBRA_HPP
#define BP3KSEST_ALGEBRA_HPP

#include <gmpxx.h>

#include <span>
#include <utility>

#include "bp3ksest/bytes.hpp"
#include "bp3ksest/rng.hpp"

namespace bpks {

// Symmetric (type A) pairing setting: G is the order-p subgroup of the
// supersingular curve y^2 = x^3 + x over F_q with q = 3 (mod 4) and
// q + 1 = h*p; G_T is the order-p subgroup of F_{q^2}^*. The pairing is the
// Tate pairing composed with the distortion map (x,y) -> (-x, iy), so
// e(A,B) = e(B,A) and both arguments live in the same group.
//
// Fixed parameter set (160-bit group order, 512-bit field, matching the
// usual type A benchmark sizes):
//   p = next_prime(2^159)
//   h = smallest multiple of 4 with h >= ceil((2^511+1)/p), p∤h and p*h-1 prime
//   q = p*h - 1

// Group order p.
const mpz_class& group_order();
// Field characteristic q.
const mpz_class& field_order();

// An exponent in Z_p. Always reduced to [0, p).
class Scalar {
public:
    Scalar() : v_(0) {}
    explicit Scalar(const mpz_class& v);
    static Scalar from_u64(uint64_t v) { return Scalar(mpz_class(static_cast<unsigned long>(v))); }
    static Scalar random(Drbg& rng);
    static Scalar random_nonzero(Drbg& rng);

    const mpz_class& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar neg() const;
    Scalar inv() const;  // throws std::invalid_argument on zero
    bool operator==(const Scalar& o) const { return v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return v_ != o.v_; }

    Bytes encode() const;  // 20 bytes, big-endian
    static Scalar decode(const Bytes& in);

private:
    mpz_class v_;
};

// An element of G (affine point, or the identity).
class GroupElem {
public:
    GroupElem() : inf_(true) {}  // identity

    static GroupElem identity() { return GroupElem(); }
    bool is_identity() const { return inf_; }

    GroupElem operator*(const GroupElem& o) const;  // group operation
    GroupElem pow(const Scalar& e) const;
    GroupElem inv() const;
    bool operator==(const GroupElem& o) const;
    bool operator!=(const GroupElem& o) const { return !(*this == o); }

    // 128 bytes: x||y big-endian; the identity encodes to all zeros.
    Bytes encode() const;
    // Rejects wrong length, the all-zero (identity) encoding, coordinates
    // outside F_q, off-curve points and points outside the order-p subgroup.
    static GroupElem decode(const Bytes& in);

    const mpz_class& x() const { return x_; }
    const mpz_class& y() const { return y_; }

    // Internal constructor (no curve membership check).
    GroupElem(mpz_class x, mpz_class y) : x_(std::move(x)), y_(std::move(y)), inf_(false) {}

private:
    mpz_class x_, y_;
    bool inf_;
};

// An element of G_T (norm-1 subgroup of F_{q^2} of order p), a + b*i.
class GtElem {
public:
    GtElem() : a_(1), b_(0) {}  // identity 1_T

    static GtElem one() { return GtElem(); }
    bool is_one() const { return a_ == 1 && b_ == 0; }

    GtElem operator*(const GtElem& o) const;
    GtElem pow(const Scalar& e) const;
    GtElem inv() const;  // conjugate: elements are unitary
    bool operator==(const GtElem& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const GtElem& o) const { return !(*this == o); }

    // 128 bytes: a||b big-endian.
    Bytes encode() const;
    // Rejects wrong length, coordinates outside F_q and elements whose order
    // does not divide p.
    static GtElem decode(const Bytes& in);

    GtElem(mpz_class a, mpz_class b) : a_(std::move(a)), b_(std::move(b)) {}
    const mpz_class& re() const { return a_; }
    const mpz_class& im() const { return b_; }

private:
    mpz_class a_, b_;
};

// e(a, b). Identity arguments give 1_T.
GtElem pair(const GroupElem& a, const GroupElem& b);

// prod_i e(a_i, b_i) with a shared Miller loop and one final exponentiation.
using PointPair = std::pair<GroupElem, GroupElem>;
GtElem pair_product(std::span<const PointPair> pairs);

// H1: arbitrary bytes -> Z_p (SHA-256, big-endian, reduced mod p).
Scalar hash_to_scalar(const Bytes& data);
Scalar hash_to_scalar(std::string_view data);

// Deterministic hash-to-group used to derive the public generators.
GroupElem hash_to_group(std::string_view label);

// Public parameters: five independent generators of G.
struct SystemParams {
    GroupElem g, g0, g1, h1, h2;

    // The fixed parameter set, generators derived from the domain-separated
    // labels "BP3KSEST/g", "BP3KSEST/g0", "BP3KSEST/g1", "BP3KSEST/h1",
    // "BP3KSEST/h2". Derivation happens once per process.
    static const SystemParams& standard();

    Bytes encode() const;
    static SystemParams decode(const Bytes& in);
};

// Keyword map H: w -> g0 * g1^w.
GroupElem keyword_map(const Scalar& w, const SystemParams& params);

}  // namespace bpks

#endif
