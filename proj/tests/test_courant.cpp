#include "diracspace/courant.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace testsupport;

namespace {

SectionEp random_section(Sampler& rng, int n, int p) { return SectionEp(rng.vfield(n), rng.form(n, p)); }

SectionPr random_tier(Sampler& rng, int n, int p, int r) {
    return SectionPr(p, rng.multivec(n, r, 1, 2, 0.5), rng.form(n, p + 1 - r, 1, 2, 0.5));
}

} // namespace

TEST_CASE("pairing examples") {
    int n = 3;
    CHECK(pairing(SectionEp::vector(D(n, 1), 1), SectionEp::vector(D(n, 2), 1)).is_zero());
    Sampler rng(1);
    for (int p = 1; p <= 2; ++p) {
        Form w = rng.form(n, p + 1);
        VField X = rng.vfield(n), Y = rng.vfield(n);
        CHECK(pairing(SectionEp(X, -interior(X, w)), SectionEp(Y, -interior(Y, w))).is_zero());
    }
    MultiVec pi = Ds(n, 1, 2, 3);
    SectionEp a(contract(dxs(n, 2, 3), pi).to_vfield(), dxs(n, 2, 3));
    SectionEp b(contract(dxs(n, 1, 3), pi).to_vfield(), dxs(n, 1, 3));
    CHECK(pairing(a, b).is_zero());
}

TEST_CASE("dorfman and courant examples") {
    int n = 3;
    // [[d1, x1 dx2^dx3]] = dx2^dx3
    SectionEp e1 = SectionEp::vector(D(n, 1), 2);
    SectionEp e2 = SectionEp::form(x(n, 1) * dxs(n, 2, 3));
    CHECK(dorfman(e1, e2) == SectionEp::form(dxs(n, 2, 3)));
    Sampler rng(2);
    for (int t = 0; t < 20; ++t) {
        int p = 1 + t % 2;
        SectionEp e = random_section(rng, n, p);
        CHECK(dorfman(e, e) == SectionEp::form(d(interior(e.X, e.alpha))));
        CHECK(courant(e, e).is_zero());
        // p = 1: [[X+df, Y+dg]]_Cou = [X,Y] + 1/2 d(X(g) - Y(f))
        VField X = rng.vfield(n), Y = rng.vfield(n);
        Poly f = rng.poly(n), g = rng.poly(n);
        SectionEp l = courant(SectionEp(X, d(fn(f))), SectionEp(Y, d(fn(g))));
        CHECK(l == SectionEp(lie_bracket(X, Y), d(fn(X.apply(g) - Y.apply(f))) * Rat(1, 2)));
    }
}

TEST_CASE("Courant algebra identities on random sections") {
    Sampler rng(77);
    for (int t = 0; t < 30; ++t) {
        int n = 3 + t % 2, p = 1 + t % 3;
        if (p > n) p = n;
        SectionEp e1 = random_section(rng, n, p), e2 = random_section(rng, n, p), e3 = random_section(rng, n, p);
        Poly f = rng.poly(n);
        CHECK(pairing(e1, e2) == pairing(e2, e1));
        CHECK(courant(e1, e2) == -courant(e2, e1));
        CHECK(dorfman(e1, e2) - courant(e1, e2) == SectionEp::form(d(pairing(e1, e2)) * Rat(1, 2)));
        Form cou = lie_derivative(e1.X, e2.alpha) - lie_derivative(e2.X, e1.alpha) -
                   d(interior(e1.X, e2.alpha) - interior(e2.X, e1.alpha)) * Rat(1, 2);
        CHECK(courant(e1, e2) == SectionEp(lie_bracket(e1.X, e2.X), cou));
        CHECK(dorfman(e1, dorfman(e2, e3)) == dorfman(dorfman(e1, e2), e3) + dorfman(e2, dorfman(e1, e3)));
        CHECK(dorfman(e1, f * e2) == f * dorfman(e1, e2) + e1.X.apply(f) * e2);
        SectionEp left_leibniz = f * dorfman(e1, e2) - e2.X.apply(f) * e1 + SectionEp::form(wedge(d(fn(f)), pairing(e1, e2)));
        CHECK(dorfman(f * e1, e2) == left_leibniz);
    }
}

TEST_CASE("twisted Jacobi identity and its negative control") {
    Sampler rng(5);
    int n = 4, p = 1;
    Form H = d(rng.form(n, p + 1));
    for (int t = 0; t < 10; ++t) {
        SectionEp e1 = random_section(rng, n, p), e2 = random_section(rng, n, p), e3 = random_section(rng, n, p);
        CHECK(dorfman(e1, dorfman(e2, e3, H), H) ==
              dorfman(dorfman(e1, e2, H), e3, H) + dorfman(e2, dorfman(e1, e3, H), H));
    }
    Form bad = x(n, 4) * dxs(n, 1, 2, 3);
    REQUIRE_FALSE(d(bad).is_zero());
    bool violated = false;
    for (int t = 0; t < 10 && !violated; ++t) {
        SectionEp e1 = random_section(rng, n, p), e2 = random_section(rng, n, p), e3 = random_section(rng, n, p);
        violated = !(dorfman(e1, dorfman(e2, e3, bad), bad) ==
                     dorfman(dorfman(e1, e2, bad), e3, bad) + dorfman(e2, dorfman(e1, e3, bad), bad));
    }
    CHECK(violated);
    CHECK_THROWS_AS(dorfman(random_section(rng, n, 1), random_section(rng, n, 1), dxs(n, 1, 2)), DegreeError);
}

TEST_CASE("gauge and scaling symmetries") {
    Sampler rng(9);
    for (int t = 0; t < 15; ++t) {
        int n = 3, p = 1 + t % 2;
        SectionEp e1 = random_section(rng, n, p), e2 = random_section(rng, n, p);
        Form B = d(rng.form(n, p));
        CHECK(gauge(SectionEp::form(e1.alpha), B, 1) == SectionEp::form(e1.alpha));
        CHECK(gauge(gauge(e1, B, 1), B, -1) == e1);
        CHECK(dorfman(gauge(e1, B, 1), gauge(e2, B, 1)) == gauge(dorfman(e1, e2), B, 1));
        CHECK(pairing(gauge(e1, B, 1), gauge(e2, B, 1)) == pairing(e1, e2));
        CHECK(scale(e1, 1) == e1);
        CHECK(pairing(scale(e1, 2), scale(e2, 2)) == pairing(e1, e2) * Rat(2));
        CHECK(scale(dorfman(e1, e2), 2) == dorfman(scale(e1, 2), scale(e2, 2)));
    }
    CHECK_THROWS(scale(SectionEp::zero(3, 1), 0));
}

TEST_CASE("multi-pairing examples") {
    Sampler rng(10);
    int n = 4, p = 3;
    for (int t = 0; t < 10; ++t) {
        SectionEp e1 = random_section(rng, n, p), e2 = random_section(rng, n, p);
        CHECK(multi_pairing(SectionPr::from_ep(e1), SectionPr::from_ep(e2)) == pairing(e1, e2) * Rat(1, 2));
        SectionPr a = random_tier(rng, n, p, 1);
        CHECK(multi_pairing(a, a) == contract(a.Y, a.eta));
        SectionPr b(p, MultiVec(n, 2), rng.form(n, 2)), c2(p, MultiVec(n, 2), rng.form(n, 2));
        CHECK(multi_pairing(b, c2).is_zero());
    }
    CHECK_THROWS_AS(multi_pairing(random_tier(rng, n, p, 2), random_tier(rng, n, p, 3)), DegreeError);
}

TEST_CASE("tier (1,1) multi-bracket is the Courant bracket") {
    Sampler rng(12);
    for (int t = 0; t < 25; ++t) {
        int n = 3 + t % 2, p = 1 + t % 3;
        SectionEp e1 = random_section(rng, n, p), e2 = random_section(rng, n, p);
        CHECK(multi_bracket(SectionPr::from_ep(e1), SectionPr::from_ep(e2)).to_ep() == courant(e1, e2));
    }
}

TEST_CASE("multi-bracket identities on graphs of forms") {
    Sampler rng(13);
    for (int t = 0; t < 30; ++t) {
        int n = 4, p = 3;
        int r = 1 + static_cast<int>(rng.uniform(0, 2));
        int s = 1 + static_cast<int>(rng.uniform(0, p - r));
        Form w = rng.form(n, p + 1, 2, 2, 0.8);
        MultiVec Y = rng.multivec(n, r, 1, 2), Yb = rng.multivec(n, s, 1, 2);
        SectionPr a(p, Y, contract(Y, w)), b(p, Yb, contract(Yb, w));
        MultiVec br = schouten(Y, Yb) * Rat(sign_pow((r - 1) * (s - 1)));
        SectionPr expected(p, br, contract(br, w) + contract(Y, contract(Yb, d(w))) * Rat(sign_pow(r)));
        CHECK(multi_bracket(a, b) == expected);
    }
}

TEST_CASE("multi-bracket against closed annihilator forms") {
    // S = span(d1, d2) in R^4, p = 3; closed forms in wedge S-annihilator: dx3, dx4, dx3^dx4.
    Sampler rng(14);
    int n = 4, p = 3;
    for (int t = 0; t < 30; ++t) {
        int r = 1 + static_cast<int>(rng.uniform(0, 1));
        int s = 1 + static_cast<int>(rng.uniform(0, p - r));
        Form ac = s == 3 ? dx(n, 3 + static_cast<int>(rng.uniform(0, 1))) : dxs(n, 3, 4);
        if (s == 1) continue;
        MultiVec Y(n, r);
        for (Mask m : lex_masks(n, r))
            if ((m & 3u) && rng.coin()) Y.add(m, rng.poly(n, 1, 2));
        Form w = rng.form(n, p + 1, 1, 2, 0.8);
        Poly f = rng.poly(n);
        SectionPr a(p, Y, contract(Y, w)), b(p, MultiVec(n, s), f * ac);
        CHECK(contract(Y, ac).is_zero());
        CHECK(multi_bracket(a, b) == SectionPr(p, MultiVec(n, r + s - 1), contract(Y, wedge(d(fn(f)), ac))));
    }
}
