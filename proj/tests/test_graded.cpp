#include "diracspace/graded.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace testsupport;

namespace {

// Random homogeneous element of degree deg in dimension n, coefficients of degree <= 1.
GPoly random_gpoly(Sampler& rng, int r, int n, int deg) {
    std::vector<GKey> keys;
    GPoly probe(r, n);
    int pmax = probe.p_odd() ? 1 : 2, Pmax = probe.P_odd() ? 1 : 2;
    int pcount = 1, Pcount = 1;
    for (int i = 0; i < n; ++i) {
        pcount *= pmax + 1;
        Pcount *= Pmax + 1;
    }
    for (Mask v = 0; v < (Mask(1) << n); ++v)
        for (int pc = 0; pc < pcount; ++pc)
            for (int Pc = 0; Pc < Pcount; ++Pc) {
                GKey k;
                k.v = v;
                int a = pc, b = Pc;
                for (int i = 0; i < n; ++i) {
                    k.p[i] = static_cast<std::uint8_t>(a % (pmax + 1));
                    a /= pmax + 1;
                    k.P[i] = static_cast<std::uint8_t>(b % (Pmax + 1));
                    b /= Pmax + 1;
                }
                if (probe.key_degree(k) == deg) keys.push_back(k);
            }
    GPoly g(r, n);
    if (keys.empty()) return g;
    for (int t = 0; t < 3; ++t) g.add(keys[rng.uniform(0, static_cast<long>(keys.size()) - 1)], rng.poly(n, 1, 2));
    return g;
}

int sgn(long e) { return sign_pow(e); }

} // namespace

TEST_CASE("graded products") {
    for (int r = 2; r <= 3; ++r) {
        int n = 3;
        auto v1 = GPoly::v(r, n, 0), v2 = GPoly::v(r, n, 1);
        CHECK(v1 * v2 == v2 * v1 * Rat(-1));
        CHECK((v1 * v1).is_zero());
        auto p1 = GPoly::p(r, n, 0), p2 = GPoly::p(r, n, 1);
        if (r == 3) {
            CHECK(p1 * p2 == p2 * p1);
            CHECK_FALSE((p1 * p1).is_zero());
        } else {
            CHECK(p1 * p2 == p2 * p1 * Rat(-1));
            CHECK((p1 * p1).is_zero());
        }
        CHECK((GPoly::x(r, n, 0) * v1).str() == "x1*v1");
    }
    CHECK_THROWS_AS(GPoly::v(2, 3, 0) * GPoly::v(3, 3, 0), ContextMismatch);

    Sampler rng(70);
    for (int r = 2; r <= 3; ++r)
        for (int t = 0; t < 40; ++t) {
            int n = 3;
            int da = static_cast<int>(rng.uniform(0, 4)), db = static_cast<int>(rng.uniform(0, 4)),
                dc = static_cast<int>(rng.uniform(0, 3));
            GPoly a = random_gpoly(rng, r, n, da), b = random_gpoly(rng, r, n, db), c = random_gpoly(rng, r, n, dc);
            CHECK(a * (b * c) == (a * b) * c);
            CHECK(a * b == b * a * Rat(sgn(da * db)));
            if (!(a * b).is_zero()) CHECK((a * b).degree() == da + db);
        }
}

TEST_CASE("graded bracket on generators") {
    for (int r = 2; r <= 3; ++r) {
        int n = 3;
        GPoly one = GPoly::scalar(r, Poly(n, 1));
        CHECK(gbracket(GPoly::P(r, n, 0), GPoly::x(r, n, 0)) == one);
        CHECK(gbracket(GPoly::x(r, n, 0), GPoly::P(r, n, 0)) == one * Rat(-1));
        CHECK(gbracket(GPoly::p(r, n, 1), GPoly::v(r, n, 1)) == one);
        CHECK(gbracket(GPoly::v(r, n, 1), GPoly::p(r, n, 1)) == one * Rat(-sgn(r - 1)));
        CHECK(gbracket(GPoly::p(r, n, 1), GPoly::v(r, n, 2)).is_zero());
        CHECK(gbracket(GPoly::P(r, n, 0), GPoly::v(r, n, 0)).is_zero());
        CHECK(gbracket(GPoly::x(r, n, 0), GPoly::x(r, n, 1)).is_zero());
        GPoly S = euler_S(r, n);
        CHECK(S.degree() == r + 1);
        CHECK(gbracket(S, S).is_zero());
    }
}

TEST_CASE("graded Poisson algebra properties") {
    Sampler rng(71);
    for (int r = 2; r <= 3; ++r)
        for (int t = 0; t < 40; ++t) {
            int n = static_cast<int>(rng.uniform(2, 3));
            int da = static_cast<int>(rng.uniform(0, r + 1)), db = static_cast<int>(rng.uniform(0, r + 1)),
                dc = static_cast<int>(rng.uniform(0, r + 1));
            GPoly a = random_gpoly(rng, r, n, da), b = random_gpoly(rng, r, n, db), c = random_gpoly(rng, r, n, dc);
            int sa = da - r, sb = db - r;
            GPoly ab = gbracket(a, b);
            CHECK(ab == gbracket(b, a) * Rat(-sgn(sa * sb)));
            if (!ab.is_zero()) CHECK(ab.degree() == da + db - r);
            // Jacobi on the shifted algebra
            CHECK(gbracket(a, gbracket(b, c)) == gbracket(ab, c) + gbracket(b, gbracket(a, c)) * Rat(sgn(sa * sb)));
            // derivation of the product
            CHECK(gbracket(a, b * c) == ab * c + b * gbracket(a, c) * Rat(sgn(sa * db)));
        }
}

TEST_CASE("encoding forms and sections") {
    int r = 3, n = 3;
    CHECK(encode(x(n, 1) * dx(n, 2), r) == GPoly::x(r, n, 0) * GPoly::v(r, n, 1));
    CHECK(encode(D(n, 3), r) == GPoly::p(r, n, 2));
    CHECK(encode(dxs(n, 1, 3), r) == GPoly::v(r, n, 0) * GPoly::v(r, n, 2));
    CHECK_THROWS_AS(encode(SectionEp(D(n, 1), dx(n, 1)), r), DegreeError);
    CHECK_THROWS_AS(decode(GPoly::p(r, n, 0), 1), DegreeError);
    CHECK_THROWS_AS(decode(euler_S(r, n), 2), DegreeError);
    CHECK_THROWS_AS(decode(GPoly::v(r, n, 0), 3), DegreeError);

    Sampler rng(72);
    for (int t = 0; t < 100; ++t) {
        int rr = static_cast<int>(rng.uniform(2, 3)), nn = static_cast<int>(rng.uniform(2, 4));
        int k = static_cast<int>(rng.uniform(0, rr - 1));
        if (k < rr - 1) {
            Form f = rng.form(nn, k);
            CHECK(std::get<Form>(decode(encode(f, rr), k)) == f);
        } else {
            SectionEp e(rng.vfield(nn), rng.form(nn, rr - 1));
            CHECK(std::get<SectionEp>(decode(encode(e, rr), k)) == e);
        }
    }
}

TEST_CASE("derived bracket facts") {
    Sampler rng(73);
    for (int r = 2; r <= 3; ++r)
        for (int n = 3; n <= 4; ++n) {
            std::vector<Form> hs{Form(n, r + 1)};
            if (r + 1 <= n) hs.push_back(d(rng.form(n, r)));
            for (auto& H : hs) {
                Report rep = derived_check(r, H, "abcdH", rng, 6);
                CAPTURE(r);
                CAPTURE(n);
                CHECK(rep.pass);
                for (auto& w : rep.witnesses) MESSAGE(w);
            }
        }
}

TEST_CASE("twisted differential squares to zero exactly for closed H") {
    Sampler rng(74);
    for (int r = 2; r <= 3; ++r) {
        int n = 4;
        Form closed = d(rng.form(n, r));
        Form open = x(n, 4) * Form::basis(n, lex_masks(n, r + 1).front());
        if (r + 1 == 4) open = x(n, 1) * vol(n);
        for (const Form& H : {closed, open}) {
            GPoly D = euler_S(r, n) - encode(H, r);
            GPoly sq = gbracket(D, D);
            CHECK(sq == encode(d(H), r) * Rat(-2));
            CHECK(sq.is_zero() == d(H).is_zero());
        }
    }
}

TEST_CASE("oracle brackets agree with the Getzler family") {
    Sampler rng(75);
    for (int r = 2; r <= 3; ++r)
        for (int n = 3; n <= 4; ++n) {
            Form H = r + 1 <= n ? d(x(n, 1) * x(n, 2) * Form::basis(n, lex_masks(n, r).back())) : Form(n, r + 1);
            for (const Form& h : {Form(n, r + 1), H}) {
                auto F = getzler_family(r, h);
                for (int m : {1, 2, 3, 4, 5}) {
                    for (int t = 0; t < 25; ++t) {
                        std::vector<GradedElem> xs;
                        for (int k = 0; k < m; ++k) {
                            int deg = rng.coin() ? 0 : -static_cast<int>(rng.uniform(0, r - 1));
                            xs.push_back(random_getzler_elem(rng, n, r, deg));
                        }
                        CAPTURE(r);
                        CAPTURE(n);
                        CAPTURE(m);
                        CHECK(oracle_multibracket(r, h, xs) == F.bracket(xs));
                    }
                }
            }
        }
    std::vector<GradedElem> six(6, random_getzler_elem(rng, 3, 2, 0));
    CHECK_THROWS_AS(oracle_multibracket(2, Form(3, 3), six), ArityError);
}

TEST_CASE("oracle adjudicates the trinary bracket with a lower form") {
    Sampler rng(76);
    int r = 3, n = 4;
    GetzlerOptions withd;
    withd.xi_with_d_term = true;
    auto F = getzler_family(r, Form(n, 4));
    auto G = getzler_family(r, Form(n, 4), withd);
    int differ = 0;
    for (int t = 0; t < 20; ++t) {
        GradedElem xi = random_getzler_elem(rng, n, r, -1);
        GradedElem e1 = random_getzler_elem(rng, n, r, 0), e2 = random_getzler_elem(rng, n, r, 0);
        GradedElem o = oracle_multibracket(r, Form(n, 4), {xi, e1, e2});
        CHECK(o == F.bracket({xi, e1, e2}));
        if (!(o == G.bracket({xi, e1, e2}))) ++differ;
    }
    CHECK(differ > 0);
}

TEST_CASE("sign conversion between symmetric and skew brackets") {
    CHECK(decalage_sign({-1, 0, 0}) == 1);
    CHECK(decalage_sign({0, -1}) == 1);
    CHECK(decalage_sign({-1, 0}) == -1);
    CHECK(decalage_sign({0, -1, 0}) == -1);
    CHECK(decalage_sign({-2, 0, 0, 0, 0}) == 1);
    CHECK(decalage_sign({}) == 1);

    // the sign matters off the canonical orderings
    Sampler rng(77);
    int r = 2, n = 3;
    auto F = getzler_family(r, Form(n, 3));
    GradedElem e = random_getzler_elem(rng, n, r, 0), f = random_getzler_elem(rng, n, r, -1);
    GPoly sym = getzler_symmetric_bracket(r, Form(n, 3), {f, e});
    GradedElem unsigned_value = GradedElem::of_form(decode_form(sym, 0), r);
    CHECK(F.bracket({f, e}) == Rat(-1) * unsigned_value);
    CHECK(oracle_multibracket(r, Form(n, 3), {f, e}) == F.bracket({f, e}));
}
