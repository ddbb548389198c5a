#include <doctest.h>

#include <set>
#include <string>

#include "bp3ksest/credential.hpp"

using namespace bpks;

namespace {

struct Fixture {
    const SystemParams& params = SystemParams::standard();
    Drbg rng{1001};
    CaKeyPair ca = CaKeyPair::generate(params, rng);
    CaPublicKey pk{ca.X, ca.Y};
};

}  // namespace

TEST_SUITE_BEGIN("credential");

TEST_CASE("issue satisfies both verification pairings") {
    Fixture f;
    Scalar xu = Scalar::random_nonzero(f.rng);
    GroupElem Yu = f.params.g.pow(xu);
    Credential cred = issue(f.ca, Yu, f.params, f.rng);

    // e(a,Y) = e(g,b)
    CHECK(pair(cred.a, f.ca.Y) == pair(f.params.g, cred.b));
    // e(g,c) = e(X,a) * e(X,b)^{x_u}
    CHECK(pair(f.params.g, cred.c) ==
          pair(f.ca.X, cred.a) * pair(f.ca.X, cred.b).pow(xu));
}

TEST_CASE("two issuances for the same key are distinct") {
    Fixture f;
    GroupElem Yu = f.params.g.pow(Scalar::random_nonzero(f.rng));
    Credential c1 = issue(f.ca, Yu, f.params, f.rng);
    Credential c2 = issue(f.ca, Yu, f.params, f.rng);
    CHECK(c1.a != c2.a);
    CHECK(c1.b != c2.b);
    CHECK(c1.c != c2.c);
}

TEST_CASE("randomize with unit randomizers is the identity") {
    Fixture f;
    GroupElem Yu = f.params.g.pow(Scalar::random_nonzero(f.rng));
    Credential cred = issue(f.ca, Yu, f.params, f.rng);
    RandomizedCredential rc = randomize(cred, Scalar::from_u64(1), Scalar::from_u64(1));
    CHECK(rc.a_t == cred.a);
    CHECK(rc.b_t == cred.b);
    CHECK(rc.c_hat == cred.c);
}

TEST_CASE("randomize preserves both verification relations") {
    Fixture f;
    Scalar xu = Scalar::random_nonzero(f.rng);
    Credential cred = issue(f.ca, f.params.g.pow(xu), f.params, f.rng);
    for (int i = 0; i < 20; ++i) {
        Scalar r = Scalar::random_nonzero(f.rng);
        Scalar rp = Scalar::random_nonzero(f.rng);
        RandomizedCredential rc = randomize(cred, r, rp);
        CHECK(pair(rc.a_t, f.ca.Y) == pair(f.params.g, rc.b_t));
        // e(g, c_hat)^{1/r} = e(X, a~) * e(X, b~)^{x_u}
        CHECK(pair(f.params.g, rc.c_hat).pow(r.inv()) ==
              pair(f.ca.X, rc.a_t) * pair(f.ca.X, rc.b_t).pow(xu));
    }
}

TEST_CASE("zero randomizers are rejected") {
    Fixture f;
    Credential cred = issue(f.ca, f.params.g.pow(Scalar::from_u64(3)), f.params, f.rng);
    CHECK_THROWS_AS(randomize(cred, Scalar(), Scalar::from_u64(1)), std::invalid_argument);
    CHECK_THROWS_AS(randomize(cred, Scalar::from_u64(1), Scalar()), std::invalid_argument);
}

TEST_CASE("show_verify accepts honest presentations and rejects mutations") {
    Fixture f;
    Credential cred = issue(f.ca, f.params.g.pow(Scalar::random_nonzero(f.rng)), f.params, f.rng);
    RandomizedCredential rc =
        randomize(cred, Scalar::random_nonzero(f.rng), Scalar::random_nonzero(f.rng));
    CHECK(show_verify(rc, f.pk, f.params));

    RandomizedCredential bad = rc;
    bad.a_t = f.params.g;
    CHECK_FALSE(show_verify(bad, f.pk, f.params));

    RandomizedCredential degenerate;
    degenerate.a_t = GroupElem::identity();
    degenerate.b_t = GroupElem::identity();
    degenerate.c_hat = GroupElem::identity();
    CHECK_FALSE(show_verify(degenerate, f.pk, f.params));
}

TEST_CASE("issue/randomize/show_verify round trip over random inputs") {
    Fixture f;
    for (int i = 0; i < 1000; ++i) {
        Scalar xu = Scalar::random_nonzero(f.rng);
        Credential cred = issue(f.ca, f.params.g.pow(xu), f.params, f.rng);
        RandomizedCredential rc =
            randomize(cred, Scalar::random_nonzero(f.rng), Scalar::random_nonzero(f.rng));
        REQUIRE(show_verify(rc, f.pk, f.params));
    }
}

TEST_CASE("independent randomizations differ in all components") {
    Fixture f;
    Credential cred = issue(f.ca, f.params.g.pow(Scalar::random_nonzero(f.rng)), f.params, f.rng);
    RandomizedCredential r1 =
        randomize(cred, Scalar::random_nonzero(f.rng), Scalar::random_nonzero(f.rng));
    RandomizedCredential r2 =
        randomize(cred, Scalar::random_nonzero(f.rng), Scalar::random_nonzero(f.rng));
    CHECK(r1.a_t != r2.a_t);
    CHECK(r1.b_t != r2.b_t);
    CHECK(r1.c_hat != r2.c_hat);
}

TEST_CASE("forged triple fails the v_s relation") {
    Fixture f;
    Scalar xu = Scalar::random_nonzero(f.rng);
    GroupElem Yu = f.params.g.pow(xu);
    Scalar ru = Scalar::random_nonzero(f.rng);

    // c is built with exponent r_u*x*(y+1) instead of r_u*x*y
    Credential forged;
    forged.a = f.params.g.pow(ru);
    forged.b = forged.a.pow(f.ca.y);
    forged.c = forged.a.pow(f.ca.x) * Yu.pow(ru * f.ca.x * (f.ca.y + Scalar::from_u64(1)));

    // the pairing half still holds (b is honest)
    CHECK(pair(forged.a, f.ca.Y) == pair(f.params.g, forged.b));

    Scalar r = Scalar::random_nonzero(f.rng);
    RandomizedCredential rc = randomize(forged, r, Scalar::random_nonzero(f.rng));
    GtElem vs = pair(f.params.g, rc.c_hat);
    GtElem vx = pair(f.ca.X, rc.a_t);
    GtElem vxy = pair(f.ca.X, rc.b_t);
    CHECK(vs.pow(r.inv()) != vx * vxy.pow(xu));
}

TEST_CASE("credential serialization round trip") {
    Fixture f;
    Credential cred = issue(f.ca, f.params.g.pow(Scalar::from_u64(5)), f.params, f.rng);
    Credential back = Credential::decode(cred.encode());
    CHECK(back.a == cred.a);
    CHECK(back.b == cred.b);
    CHECK(back.c == cred.c);

    Bytes enc = cred.encode();
    enc.push_back(0);
    CHECK_THROWS_AS(Credential::decode(enc), std::invalid_argument);
}

TEST_SUITE_END();
