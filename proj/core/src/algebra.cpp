#include "bp3ksest/algebra.hpp"

#include <array>
#include <stdexcept>
#include <vector>

#include "bp3ksest/hash.hpp"

namespace bpks {

namespace {

constexpr size_t kScalarBytes = 20;
constexpr size_t kFqBytes = 64;
constexpr size_t kGroupBytes = 2 * kFqBytes;
constexpr size_t kGtBytes = 2 * kFqBytes;

struct CurveCtx {
    mpz_class p;         // group order
    mpz_class h;         // cofactor, q + 1 = h * p
    mpz_class q;         // field characteristic
    mpz_class sqrt_exp;  // (q + 1) / 4

    CurveCtx() {
        p = mpz_class("0x800000000000000000000000000000000000012b");
        h = mpz_class(
            "0xfffffffffffffffffffffffffffffffffffffdaa000000000000000000000000000000000005"
            "74e400000058");
        q = p * h - 1;
        sqrt_exp = (q + 1) / 4;
    }
};

const CurveCtx& ctx() {
    static const CurveCtx c;
    return c;
}

// ---- F_q helpers ----

void mod_q(mpz_class& a) { mpz_mod(a.get_mpz_t(), a.get_mpz_t(), ctx().q.get_mpz_t()); }

void mulm(mpz_class& r, const mpz_class& a, const mpz_class& b) {
    r = a * b;
    mod_q(r);
}

void subm(mpz_class& r, const mpz_class& a, const mpz_class& b) {
    r = a - b;
    if (r < 0) r += ctx().q;
}

mpz_class invm(const mpz_class& a) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), ctx().q.get_mpz_t()) == 0)
        throw std::invalid_argument("non-invertible field element");
    return r;
}

// ---- affine curve ops on y^2 = x^3 + x ----

struct Pt {
    mpz_class x, y;
    bool inf = true;
};

Pt pt_from(const GroupElem& g) {
    Pt p;
    if (!g.is_identity()) {
        p.x = g.x();
        p.y = g.y();
        p.inf = false;
    }
    return p;
}

GroupElem pt_to(const Pt& p) {
    if (p.inf) return GroupElem::identity();
    return GroupElem(p.x, p.y);
}

Pt pt_add(const Pt& a, const Pt& b) {
    if (a.inf) return b;
    if (b.inf) return a;
    const mpz_class& q = ctx().q;
    mpz_class lam, t;
    if (a.x == b.x) {
        t = a.y + b.y;
        mod_q(t);
        if (t == 0) return Pt{};
        // tangent: (3x^2 + 1) / (2y)
        mulm(lam, a.x, a.x);
        lam = 3 * lam + 1;
        mod_q(lam);
        t = 2 * a.y;
        mod_q(t);
        mulm(lam, lam, invm(t));
    } else {
        subm(t, b.y, a.y);
        mpz_class d;
        subm(d, b.x, a.x);
        mulm(lam, t, invm(d));
    }
    Pt r;
    r.inf = false;
    mulm(r.x, lam, lam);
    r.x -= a.x + b.x;
    mpz_mod(r.x.get_mpz_t(), r.x.get_mpz_t(), q.get_mpz_t());
    subm(t, a.x, r.x);
    mulm(r.y, lam, t);
    subm(r.y, r.y, a.y);
    return r;
}

// Jacobian coordinates (x = X/Z^2, y = Y/Z^3) for the scalar-multiplication
// ladder; the curve is y^2 = x^3 + a*x with a = 1.
struct JPt {
    mpz_class x, y, z;  // z = 0 encodes the identity
};

void jpt_dbl(JPt& r, const JPt& p) {
    if (p.z == 0 || p.y == 0) {
        r.z = 0;
        return;
    }
    mpz_class xx, yy, yyyy, zz, s, m, t;
    mulm(xx, p.x, p.x);
    mulm(yy, p.y, p.y);
    mulm(yyyy, yy, yy);
    mulm(zz, p.z, p.z);
    // s = 2*((x+yy)^2 - xx - yyyy)
    t = p.x + yy;
    mulm(s, t, t);
    s -= xx + yyyy;
    s *= 2;
    mod_q(s);
    // m = 3*xx + zz^2
    mulm(m, zz, zz);
    m += 3 * xx;
    mod_q(m);
    mpz_class x3, y3, z3;
    mulm(x3, m, m);
    x3 -= 2 * s;
    mod_q(x3);
    // z3 = (y+z)^2 - yy - zz
    t = p.y + p.z;
    mulm(z3, t, t);
    z3 -= yy + zz;
    mod_q(z3);
    subm(t, s, x3);
    mulm(y3, m, t);
    y3 -= 8 * yyyy;
    mod_q(y3);
    r.x = std::move(x3);
    r.y = std::move(y3);
    r.z = std::move(z3);
}

// r = p + q with q affine (z = 1)
void jpt_add_affine(JPt& r, const JPt& p, const Pt& q) {
    if (p.z == 0) {
        r.x = q.x;
        r.y = q.y;
        r.z = 1;
        return;
    }
    mpz_class z1z1, u2, s2, h, hh, i, j, rr, v, t;
    mulm(z1z1, p.z, p.z);
    mulm(u2, q.x, z1z1);
    mulm(s2, q.y, p.z);
    mulm(s2, s2, z1z1);
    subm(h, u2, p.x);
    if (h == 0) {
        if (s2 == p.y) {
            jpt_dbl(r, p);
        } else {
            r.z = 0;
        }
        return;
    }
    mulm(hh, h, h);
    i = 4 * hh;
    mod_q(i);
    mulm(j, h, i);
    subm(rr, s2, p.y);
    rr *= 2;
    mod_q(rr);
    mulm(v, p.x, i);
    mpz_class x3, y3, z3;
    mulm(x3, rr, rr);
    x3 -= j + 2 * v;
    mod_q(x3);
    subm(t, v, x3);
    mulm(y3, rr, t);
    mulm(t, p.y, j);
    y3 -= 2 * t;
    mod_q(y3);
    t = p.z + h;
    mulm(z3, t, t);
    z3 -= z1z1 + hh;
    mod_q(z3);
    r.x = std::move(x3);
    r.y = std::move(y3);
    r.z = std::move(z3);
}

Pt jpt_to_affine(const JPt& p) {
    if (p.z == 0) return Pt{};
    mpz_class zi = invm(p.z);
    mpz_class zi2, zi3;
    mulm(zi2, zi, zi);
    mulm(zi3, zi2, zi);
    Pt r;
    r.inf = false;
    mulm(r.x, p.x, zi2);
    mulm(r.y, p.y, zi3);
    return r;
}

Pt pt_mul(const mpz_class& k, const Pt& p) {
    if (k == 0 || p.inf) return Pt{};
    JPt r{0, 0, 0};
    size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        jpt_dbl(r, r);
        if (mpz_tstbit(k.get_mpz_t(), i)) jpt_add_affine(r, r, p);
    }
    return jpt_to_affine(r);
}

bool pt_on_curve(const mpz_class& x, const mpz_class& y) {
    mpz_class lhs, rhs;
    mulm(lhs, y, y);
    mulm(rhs, x, x);
    mulm(rhs, rhs, x);
    rhs += x;
    mod_q(rhs);
    return lhs == rhs;
}

// ---- F_{q^2} = F_q[i], i^2 = -1 ----

struct Fq2 {
    mpz_class a, b;
};

const Fq2 kFq2One{1, 0};

void f2_mul(Fq2& r, const Fq2& x, const Fq2& y) {
    // Karatsuba: 3 multiplications
    mpz_class v0, v1, t;
    mulm(v0, x.a, y.a);
    mulm(v1, x.b, y.b);
    t = (x.a + x.b) * (y.a + y.b);
    mod_q(t);
    subm(r.b, t, v0);
    subm(r.b, r.b, v1);
    subm(r.a, v0, v1);
}

void f2_sqr(Fq2& r, const Fq2& x) {
    mpz_class s, d, ab;
    s = x.a + x.b;
    subm(d, x.a, x.b);
    mulm(ab, x.a, x.b);
    mulm(r.a, s, d);
    r.b = 2 * ab;
    mod_q(r.b);
}

Fq2 f2_conj(const Fq2& x) {
    Fq2 r;
    r.a = x.a;
    subm(r.b, mpz_class(0), x.b);
    return r;
}

Fq2 f2_inv(const Fq2& x) {
    mpz_class n, t;
    mulm(n, x.a, x.a);
    mulm(t, x.b, x.b);
    n += t;
    mod_q(n);
    mpz_class d = invm(n);
    Fq2 r;
    mulm(r.a, x.a, d);
    mulm(r.b, x.b, d);
    subm(r.b, mpz_class(0), r.b);
    return r;
}

Fq2 f2_pow(const Fq2& x, const mpz_class& e) {
    Fq2 r = kFq2One;
    size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        f2_sqr(r, r);
        if (mpz_tstbit(e.get_mpz_t(), i)) f2_mul(r, r, x);
    }
    return r;
}

// ---- byte codecs ----

Bytes mpz_to_be_fixed(const mpz_class& v, size_t width) {
    size_t bytes = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    if (v == 0) bytes = 0;
    if (bytes > width) throw std::invalid_argument("integer too large for field width");
    Bytes out(width, 0);
    size_t count = 0;
    if (bytes > 0) mpz_export(out.data() + (width - bytes), &count, 1, 1, 1, 0, v.get_mpz_t());
    return out;
}

mpz_class mpz_from_be(const uint8_t* data, size_t len) {
    mpz_class v;
    mpz_import(v.get_mpz_t(), len, 1, 1, 1, 0, data);
    return v;
}

}  // namespace

const mpz_class& group_order() { return ctx().p; }
const mpz_class& field_order() { return ctx().q; }

// ---- Scalar ----

Scalar::Scalar(const mpz_class& v) {
    v_ = v;
    mpz_mod(v_.get_mpz_t(), v_.get_mpz_t(), ctx().p.get_mpz_t());
}

Scalar Scalar::random(Drbg& rng) { return Scalar(rng.below(ctx().p)); }

Scalar Scalar::random_nonzero(Drbg& rng) { return Scalar(rng.below_nonzero(ctx().p)); }

Scalar Scalar::operator+(const Scalar& o) const {
    mpz_class r = v_ + o.v_;
    if (r >= ctx().p) r -= ctx().p;
    Scalar s;
    s.v_ = std::move(r);
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
    mpz_class r = v_ - o.v_;
    if (r < 0) r += ctx().p;
    Scalar s;
    s.v_ = std::move(r);
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    mpz_class r = v_ * o.v_;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), ctx().p.get_mpz_t());
    Scalar s;
    s.v_ = std::move(r);
    return s;
}

Scalar Scalar::neg() const {
    Scalar s;
    if (v_ != 0) s.v_ = ctx().p - v_;
    return s;
}

Scalar Scalar::inv() const {
    Scalar s;
    if (mpz_invert(s.v_.get_mpz_t(), v_.get_mpz_t(), ctx().p.get_mpz_t()) == 0)
        throw std::invalid_argument("scalar has no inverse");
    return s;
}

Bytes Scalar::encode() const { return mpz_to_be_fixed(v_, kScalarBytes); }

Scalar Scalar::decode(const Bytes& in) {
    if (in.size() != kScalarBytes) throw std::invalid_argument("scalar encoding has wrong length");
    mpz_class v = mpz_from_be(in.data(), in.size());
    if (v >= ctx().p) throw std::invalid_argument("scalar out of range");
    Scalar s;
    s.v_ = std::move(v);
    return s;
}

// ---- GroupElem ----

GroupElem GroupElem::operator*(const GroupElem& o) const {
    return pt_to(pt_add(pt_from(*this), pt_from(o)));
}

GroupElem GroupElem::pow(const Scalar& e) const {
    return pt_to(pt_mul(e.value(), pt_from(*this)));
}

GroupElem GroupElem::inv() const {
    if (inf_) return *this;
    mpz_class ny;
    subm(ny, mpz_class(0), y_);
    return GroupElem(x_, ny);
}

bool GroupElem::operator==(const GroupElem& o) const {
    if (inf_ || o.inf_) return inf_ == o.inf_;
    return x_ == o.x_ && y_ == o.y_;
}

Bytes GroupElem::encode() const {
    if (inf_) return Bytes(kGroupBytes, 0);
    Bytes out = mpz_to_be_fixed(x_, kFqBytes);
    Bytes y = mpz_to_be_fixed(y_, kFqBytes);
    out.insert(out.end(), y.begin(), y.end());
    return out;
}

GroupElem GroupElem::decode(const Bytes& in) {
    if (in.size() != kGroupBytes) throw std::invalid_argument("group encoding has wrong length");
    bool all_zero = true;
    for (uint8_t b : in)
        if (b != 0) {
            all_zero = false;
            break;
        }
    if (all_zero) throw std::invalid_argument("identity encoding rejected");
    mpz_class x = mpz_from_be(in.data(), kFqBytes);
    mpz_class y = mpz_from_be(in.data() + kFqBytes, kFqBytes);
    if (x >= ctx().q || y >= ctx().q) throw std::invalid_argument("coordinate out of range");
    if (!pt_on_curve(x, y)) throw std::invalid_argument("point not on curve");
    GroupElem g(x, y);
    if (!pt_mul(ctx().p, pt_from(g)).inf) throw std::invalid_argument("point outside prime-order subgroup");
    return g;
}

// ---- GtElem ----

GtElem GtElem::operator*(const GtElem& o) const {
    Fq2 r;
    f2_mul(r, Fq2{a_, b_}, Fq2{o.a_, o.b_});
    return GtElem(std::move(r.a), std::move(r.b));
}

GtElem GtElem::pow(const Scalar& e) const {
    Fq2 r = f2_pow(Fq2{a_, b_}, e.value());
    return GtElem(std::move(r.a), std::move(r.b));
}

GtElem GtElem::inv() const {
    // unitary subgroup: inverse = conjugate
    Fq2 r = f2_conj(Fq2{a_, b_});
    return GtElem(std::move(r.a), std::move(r.b));
}

Bytes GtElem::encode() const {
    Bytes out = mpz_to_be_fixed(a_, kFqBytes);
    Bytes b = mpz_to_be_fixed(b_, kFqBytes);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

GtElem GtElem::decode(const Bytes& in) {
    if (in.size() != kGtBytes) throw std::invalid_argument("gt encoding has wrong length");
    mpz_class a = mpz_from_be(in.data(), kFqBytes);
    mpz_class b = mpz_from_be(in.data() + kFqBytes, kFqBytes);
    if (a >= ctx().q || b >= ctx().q) throw std::invalid_argument("coordinate out of range");
    Fq2 v{a, b};
    Fq2 chk = f2_pow(v, ctx().p);
    if (!(chk.a == 1 && chk.b == 0)) throw std::invalid_argument("element outside order-p subgroup");
    return GtElem(std::move(a), std::move(b));
}

// ---- pairing ----

namespace {

struct MillerPair {
    Pt v;         // running point
    Pt base;      // original first argument
    mpz_class xq;  // second argument, fed through the distortion map
    mpz_class yq;
    bool alive = true;
};

// Batched inversion of the doubling denominators 2*y_V (Montgomery trick).
void batch_invert(std::vector<mpz_class>& vals) {
    size_t n = vals.size();
    if (n == 0) return;
    std::vector<mpz_class> prefix(n);
    prefix[0] = vals[0];
    for (size_t i = 1; i < n; ++i) mulm(prefix[i], prefix[i - 1], vals[i]);
    mpz_class inv_all = invm(prefix[n - 1]);
    for (size_t i = n; i-- > 1;) {
        mpz_class t;
        mulm(t, inv_all, prefix[i - 1]);
        mulm(inv_all, inv_all, vals[i]);
        vals[i] = std::move(t);
    }
    vals[0] = std::move(inv_all);
}

}  // namespace

GtElem pair_product(std::span<const PointPair> pairs) {
    std::vector<MillerPair> work;
    work.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        if (a.is_identity() || b.is_identity()) continue;  // e(1, x) = e(x, 1) = 1_T
        MillerPair mp;
        mp.v = pt_from(a);
        mp.base = mp.v;
        // with phi(Q) = (-x_Q, i*y_Q), lines evaluate to lam*(x_Q+x_V)-y_V + y_Q*i
        mp.xq = b.x();
        mp.yq = b.y();
        mp.alive = true;
        work.push_back(std::move(mp));
    }
    if (work.empty()) return GtElem::one();

    const mpz_class& p = ctx().p;
    Fq2 f = kFq2One;
    mpz_class lam, t, real;
    std::vector<mpz_class> dens;
    size_t bits = mpz_sizeinbase(p.get_mpz_t(), 2);

    for (size_t i = bits - 1; i-- > 0;) {
        // doubling step for every pair, denominators inverted in one batch
        dens.clear();
        for (auto& mp : work)
            if (mp.alive) {
                t = 2 * mp.v.y;
                mod_q(t);
                dens.push_back(t);
            }
        batch_invert(dens);
        f2_sqr(f, f);
        size_t di = 0;
        for (auto& mp : work) {
            if (!mp.alive) continue;
            // tangent slope at V
            mulm(lam, mp.v.x, mp.v.x);
            lam = 3 * lam + 1;
            mod_q(lam);
            mulm(lam, lam, dens[di++]);
            // line through (V,V) evaluated at (-xq, i*yq): lam*(xq+xv) - yv + yq*i
            t = mp.xq + mp.v.x;
            mod_q(t);
            mulm(real, lam, t);
            subm(real, real, mp.v.y);
            f2_mul(f, f, Fq2{real, mp.yq});
            // double V in place
            mpz_class x3;
            mulm(x3, lam, lam);
            x3 -= 2 * mp.v.x;
            mod_q(x3);
            subm(t, mp.v.x, x3);
            mulm(t, lam, t);
            subm(mp.v.y, t, mp.v.y);  // y3 = lam*(x_old - x3) - y_old
            mp.v.x = std::move(x3);
        }

        if (mpz_tstbit(p.get_mpz_t(), i)) {
            for (auto& mp : work) {
                if (!mp.alive) continue;
                if (mp.v.x == mp.base.x) {
                    // vertical chord (V = -P): contribution eliminated by the
                    // final exponentiation; V + P = O.
                    mp.alive = false;
                    mp.v = Pt{};
                    continue;
                }
                subm(t, mp.v.y, mp.base.y);
                mpz_class d;
                subm(d, mp.v.x, mp.base.x);
                mulm(lam, t, invm(d));
                t = mp.xq + mp.v.x;
                mod_q(t);
                mulm(real, lam, t);
                subm(real, real, mp.v.y);
                f2_mul(f, f, Fq2{real, mp.yq});
                mp.v = pt_add(mp.v, mp.base);
            }
        }
    }

    // final exponentiation: f^(q-1) then ^h
    Fq2 u;
    f2_mul(u, f2_conj(f), f2_inv(f));
    Fq2 r = f2_pow(u, ctx().h);
    return GtElem(std::move(r.a), std::move(r.b));
}

GtElem pair(const GroupElem& a, const GroupElem& b) {
    PointPair pp{a, b};
    return pair_product(std::span<const PointPair>(&pp, 1));
}

// ---- hashes and parameters ----

Scalar hash_to_scalar(const Bytes& data) {
    Digest d = sha256(data);
    return Scalar(mpz_from_be(d.data(), d.size()));
}

Scalar hash_to_scalar(std::string_view data) {
    return hash_to_scalar(Bytes(data.begin(), data.end()));
}

GroupElem hash_to_group(std::string_view label) {
    for (uint32_t ctr = 0;; ++ctr) {
        ByteWriter pre;
        pre.put_raw(reinterpret_cast<const uint8_t*>(label.data()), label.size());
        pre.put_u32(ctr);
        Bytes b0 = pre.bytes();
        b0.push_back(0x00);
        Bytes b1 = pre.bytes();
        b1.push_back(0x01);
        Digest d0 = sha256(b0);
        Digest d1 = sha256(b1);
        Bytes xb(d0.begin(), d0.end());
        xb.insert(xb.end(), d1.begin(), d1.end());
        mpz_class x = mpz_from_be(xb.data(), xb.size());
        mod_q(x);
        mpz_class rhs;
        mulm(rhs, x, x);
        mulm(rhs, rhs, x);
        rhs += x;
        mod_q(rhs);
        mpz_class y;
        mpz_powm(y.get_mpz_t(), rhs.get_mpz_t(), ctx().sqrt_exp.get_mpz_t(), ctx().q.get_mpz_t());
        mpz_class chk;
        mulm(chk, y, y);
        if (chk != rhs) continue;
        mpz_class alt = ctx().q - y;
        if (alt < y) y = alt;
        Pt p;
        p.x = std::move(x);
        p.y = std::move(y);
        p.inf = false;
        Pt sub = pt_mul(ctx().h, p);
        if (!sub.inf) return pt_to(sub);
    }
}

const SystemParams& SystemParams::standard() {
    static const SystemParams params = [] {
        SystemParams p;
        p.g = hash_to_group("BP3KSEST/g");
        p.g0 = hash_to_group("BP3KSEST/g0");
        p.g1 = hash_to_group("BP3KSEST/g1");
        p.h1 = hash_to_group("BP3KSEST/h1");
        p.h2 = hash_to_group("BP3KSEST/h2");
        return p;
    }();
    return params;
}

Bytes SystemParams::encode() const {
    ByteWriter w;
    w.put_lp(mpz_to_be_fixed(group_order(), kScalarBytes));
    w.put_lp(g.encode());
    w.put_lp(g0.encode());
    w.put_lp(g1.encode());
    w.put_lp(h1.encode());
    w.put_lp(h2.encode());
    return w.take();
}

SystemParams SystemParams::decode(const Bytes& in) {
    ByteReader r(in);
    Bytes pb = r.get_lp();
    if (mpz_from_be(pb.data(), pb.size()) != group_order())
        throw std::invalid_argument("unexpected group order");
    SystemParams p;
    p.g = GroupElem::decode(r.get_lp());
    p.g0 = GroupElem::decode(r.get_lp());
    p.g1 = GroupElem::decode(r.get_lp());
    p.h1 = GroupElem::decode(r.get_lp());
    p.h2 = GroupElem::decode(r.get_lp());
    r.finish();
    return p;
}

GroupElem keyword_map(const Scalar& w, const SystemParams& params) {
    return params.g0 * params.g1.pow(w);
}

}  // namespace bpks
