#include "diracspace/presentation.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace testsupport;

TEST_CASE("membership examples") {
    Sampler rng(31);
    Form w = rng.form(3, 3);
    Presentation G(GraphForm{w});
    VField X = rng.vfield(3);
    CHECK(member(G, SectionEp(X, -interior(X, w))));
    CHECK_FALSE(member(G, SectionEp(X + D(3, 1), -interior(X, w))));

    Presentation R(Regular{identity_frame(4), {0, 1}, dxs(4, 1, 2, 3)});
    CHECK(member(R, SectionEp::form((x(4, 1) + c(4, 2)) * dxs(4, 3, 4))));
    CHECK_FALSE(member(R, SectionEp::form(dxs(4, 1, 4))));
    CHECK(member(R, SectionEp(D(4, 1), interior(D(4, 1), dxs(4, 1, 2, 3)))));
    CHECK_FALSE(member(R, SectionEp(D(4, 3), Form(4, 2))));

    int n = 3;
    Presentation T(ScaledTop{x(n, 1), vol(n)});
    CHECK(member(T, SectionEp(x(n, 1) * D(n, 2), -interior(D(n, 2), vol(n)))));
    CHECK_FALSE(member(T, SectionEp(D(n, 2), Form(n, 2))));
    CHECK(member(T, SectionEp::zero(n, 2)));
    CHECK_THROWS_AS(member(T, SectionEp::zero(4, 2)), ContextMismatch);
}

TEST_CASE("presentation invariants are enforced") {
    CHECK_THROWS_AS(Presentation(GraphMultivector{Ds(4, 1, 2, 3)}), PresentationError);
    CHECK_NOTHROW(Presentation(GraphMultivector{MultiVec(4, 3)}));
    CHECK_NOTHROW(Presentation(GraphMultivector{Ds(4, 1, 2, 3, 4)}));
    CHECK_THROWS_AS(Presentation(Regular{identity_frame(4), {0, 1, 2}, dxs(4, 1, 2, 3)}), PresentationError);
    CHECK_NOTHROW(Presentation(Regular{identity_frame(4), {0, 1, 2, 3}, dxs(4, 1, 2, 3)}));
    std::vector<RatVec> singular{{1, 0}, {2, 0}};
    CHECK_THROWS_AS(Presentation(Regular{singular, {0}, dxs(2, 1, 2)}), PresentationError);
    CHECK_THROWS_AS(Presentation(ScaledTop{x(3, 1), Form(3, 3)}), PresentationError);
}

TEST_CASE("isotropy examples") {
    Sampler rng(32);
    for (int t = 0; t < 10; ++t) CHECK(verify_isotropic(Presentation(GraphForm{rng.form(3 + t % 2, 3)})).pass);
    CHECK(verify_isotropic(Presentation(GraphMultivector{Ds(3, 1, 2, 3)})).pass);
    CHECK(verify_isotropic(Presentation(GraphMultivector{x(4, 2) * Ds(4, 1, 2, 3, 4)})).pass);
    CHECK(verify_isotropic(Presentation(GraphMultivector{rng.multivec(3, 2)})).pass);
    CHECK(verify_isotropic(Presentation(ScaledTop{x(3, 1), vol(3)})).pass);

    Presentation R(Regular{identity_frame(4), {0, 1}, dxs(4, 1, 2, 3)});
    CHECK(verify_isotropic(R).pass);
    auto gens = R.generators();
    gens.back() = SectionEp::form(dxs(4, 1, 4));
    Report bad = isotropy_report(gens);
    CHECK_FALSE(bad.pass);
    REQUIRE_FALSE(bad.witnesses.empty());
    CHECK(bad.witnesses[0].find("dx") != std::string::npos);
}

TEST_CASE("involutivity examples") {
    Presentation nonmaximal(Regular{identity_frame(4), {0, 1}, dxs(4, 1, 2, 3)});
    CHECK(verify_involutive(nonmaximal).pass);

    int n = 3;
    Form w = x(n, 3) * dxs(n, 1, 2);
    CHECK(d(w) == wedge(dx(n, 3), dxs(n, 1, 2)));
    Report r = verify_involutive(Presentation(GraphForm{w}));
    CHECK_FALSE(r.pass);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses[0] == "d omega = " + d(w).str());

    Form w5 = -x(5, 4) * dxs(5, 1, 2, 3);
    CHECK(d(w5) == dxs(5, 1, 2, 3, 4));
    Report r5 = verify_involutive(Presentation(Regular{identity_frame(5), {0, 1, 2}, w5}));
    CHECK_FALSE(r5.pass);
    CHECK(r5.witnesses.size() == 1);

    Presentation top(ScaledTop{x(3, 1), vol(3)});
    CHECK(verify_involutive(top).pass);
    CHECK(verify_involutive(Presentation(GraphMultivector{Ds(3, 1, 2, 3)})).pass);
}

TEST_CASE("involutivity criteria agree with Dorfman closure") {
    Sampler rng(33);
    for (int t = 0; t < 30; ++t) {
        int n = 3 + t % 2;
        Form w = t % 3 == 0 ? d(rng.form(n, 2, 2)) : rng.form(n, 3, 1);
        Presentation G(GraphForm{w});
        CHECK(verify_involutive(G).pass == dorfman_closure(G).pass);
        CHECK(verify_involutive(G).pass == d(w).is_zero());
    }
    for (int t = 0; t < 30; ++t) {
        int n = 4 + t % 2, p = 1 + t % 2;
        std::vector<RatVec> frame;
        do {
            frame.assign(n, RatVec(n));
            for (auto& v : frame)
                for (auto& c : v) c = rng.small_rat(2);
        } while (rank(RatMatrix::from_rows(frame, n)) != n);
        std::vector<int> axes;
        int k = static_cast<int>(rng.uniform(0, n - p));
        for (int i = 0; i < k; ++i) axes.push_back(i);
        Form w = rng.form(n, p + 1, 1, 2, 0.3);
        Presentation R(Regular{frame, axes, w});
        CHECK(verify_isotropic(R).pass);
        CHECK(verify_involutive(R).pass == dorfman_closure(R).pass);
    }
}

TEST_CASE("bivector graphs are involutive exactly for Poisson bivectors") {
    Sampler rng(34);
    int n = 3;
    std::vector<MultiVec> pis{Ds(n, 1, 2), x(n, 3) * Ds(n, 1, 2), x(n, 1) * Ds(n, 2, 3) + Ds(n, 1, 2)};
    for (int t = 0; t < 12; ++t) pis.push_back(rng.multivec(n, 2, 1));
    int poisson = 0;
    for (auto& pi : pis) {
        bool is_poisson = schouten(pi, pi).is_zero();
        poisson += is_poisson;
        CHECK(verify_involutive(Presentation(GraphMultivector{pi})).pass == is_poisson);
    }
    CHECK(poisson >= 2);
    CHECK(verify_involutive(Presentation(GraphMultivector{(x(4, 1) * x(4, 2) + c(4, 1)) * Ds(4, 1, 2, 3, 4)})).pass);
}

TEST_CASE("scaled top forms") {
    Sampler rng(35);
    std::vector<Poly> fs{x(3, 1), x(3, 1) * x(3, 2) + c(3, 1), c(3, 0)};
    for (auto& f : fs) {
        Presentation T(ScaledTop{f, vol(3)});
        CHECK(verify_isotropic(T).pass);
        CHECK(verify_involutive(T).pass);
    }
    Presentation T(ScaledTop{x(3, 1), vol(3)});
    for (int t = 0; t < 10; ++t) CHECK(member(T, random_member(rng, T)));
}

TEST_CASE("Hamiltonian verification examples") {
    int n = 4;
    Presentation G(GraphForm{dxs(n, 1, 2, 3)});
    CHECK(hamiltonian_verify(G, Form(n, 1), D(n, 4)));
    CHECK(hamiltonian_verify(G, Form(n, 1), VField(n)));
    Form alpha = x(n, 4) * dx(n, 1);
    CHECK_FALSE(hamiltonian_verify(G, alpha, VField(n)));
    CHECK_FALSE(hamiltonian_verify(G, alpha, D(n, 4)));
    CHECK_FALSE(hamiltonian_solve(G, alpha).has_value());
    CHECK_THROWS_AS(make_hamiltonian(G, alpha, VField(n)), NotHamiltonian);
    CHECK_THROWS_AS(hamiltonian_verify(G, fn(x(n, 1)), VField(n)), DegreeError);
}

TEST_CASE("Hamiltonian solve examples") {
    Sampler rng(36);
    Presentation S(GraphForm{dxs(2, 1, 2)});
    for (int t = 0; t < 10; ++t) {
        Poly f = rng.poly(2, 3, 4);
        auto X = hamiltonian_solve(S, fn(f));
        REQUIRE(X.has_value());
        CHECK(*X == VField({-f.partial(1), f.partial(0)}));
    }
    Presentation Q(GraphForm{dxs(3, 1, 2, 3)});
    auto X = hamiltonian_solve(Q, x(3, 1) * dx(3, 2));
    REQUIRE(X.has_value());
    CHECK(*X == -D(3, 3));
    CHECK(interior(*X, dxs(3, 1, 2, 3)) == -dxs(3, 1, 2));
    CHECK(hamiltonian_solve(Q, Form(3, 1)) == VField(3));
    CHECK_THROWS_AS(hamiltonian_solve(Presentation(GraphForm{x(3, 1) * dxs(3, 1, 2, 3)}), Form(3, 1)), PresentationError);
    CHECK_THROWS_AS(hamiltonian_solve(Presentation(ScaledTop{x(3, 1), vol(3)}), Form(3, 1)), PresentationError);

    Presentation R(Regular{identity_frame(4), {0, 1}, dxs(4, 1, 2, 3)});
    for (int t = 0; t < 20; ++t) {
        Form a = rng.form(4, 1, 2);
        auto Y = hamiltonian_solve(R, a);
        if (Y) CHECK(hamiltonian_verify(R, a, *Y));
    }
    // x3 dx4 has d = dx3^dx4, a pure element of wedge^2 S°
    auto Y = hamiltonian_solve(R, x(4, 3) * dx(4, 4));
    REQUIRE(Y.has_value());
    CHECK(Y->is_zero());
}

TEST_CASE("Hamiltonian bases") {
    int n = 4;
    Presentation G(GraphForm{dxs(n, 1, 2, 3)});
    auto basis = hamiltonian_basis(G, 2, 1);
    CHECK(basis.size() > 4);
    for (auto& h : basis) CHECK(hamiltonian_verify(G, h.alpha, h.X));
    Sampler rng(37);
    for (int t = 0; t < 10; ++t) {
        HamiltonianDatum h = random_hamiltonian(rng, basis);
        CHECK(hamiltonian_verify(G, h.alpha, h.X));
    }
    Presentation T(ScaledTop{x(3, 1), vol(3)});
    auto tb = hamiltonian_basis(T, 2, 1);
    CHECK_FALSE(tb.empty());
    for (auto& h : tb) CHECK(hamiltonian_verify(T, h.alpha, h.X));
    Presentation M(GraphMultivector{Ds(3, 1, 2)});
    for (auto& h : hamiltonian_basis(M, 2, 1)) CHECK(hamiltonian_verify(M, h.alpha, h.X));
}

TEST_CASE("Hamiltonian bracket examples") {
    Sampler rng(38);
    Presentation S(GraphForm{dxs(2, 1, 2)});
    for (int t = 0; t < 10; ++t) {
        Poly f = rng.poly(2, 3, 3), g = rng.poly(2, 3, 3);
        HamiltonianDatum a{fn(f), *hamiltonian_solve(S, fn(f))};
        HamiltonianDatum b{fn(g), *hamiltonian_solve(S, fn(g))};
        CHECK(ham_bracket(a, b) == fn(f.partial(0) * g.partial(1) - f.partial(1) * g.partial(0)));
    }

    // The Hamiltonian field of 0 is ambiguous up to D4, the bracket is not.
    int n = 4;
    Form theta = dxs(n, 1, 2, 3);
    Presentation G(GraphForm{theta});
    Form beta = x(n, 1) * dx(n, 4) + x(n, 4) * dx(n, 1);
    HamiltonianDatum b{beta, *hamiltonian_solve(G, beta)};
    HamiltonianDatum z0{Form(n, 1), VField(n)}, z4{Form(n, 1), D(n, 4)};
    CHECK(hamiltonian_verify(G, b.alpha, b.X));
    CHECK(hamiltonian_verify(G, z4.alpha, z4.X));
    CHECK(ham_bracket(z0, b) == ham_bracket(z4, b));
    CHECK(lie_derivative(D(n, 4), beta) == dx(n, 1));
    CHECK(lie_derivative(VField(n), beta).is_zero());
}

TEST_CASE("Hamiltonian bracket properties") {
    Sampler rng(39);
    int n = 4;
    Presentation G(GraphForm{dxs(n, 1, 2, 3)});
    auto basis = hamiltonian_basis(G, 2, 1);
    for (int t = 0; t < 20; ++t) {
        auto h = random_tuple(rng, basis, 3);
        CHECK((ham_bracket(h[0], h[1]) + ham_bracket(h[1], h[0])).is_zero());
        CHECK(jacobiator_residual(h[0], h[1], h[2]).is_zero());
        HamiltonianDatum br = bracket_datum(h[0], h[1]);
        CHECK(hamiltonian_verify(G, br.alpha, br.X));
        SectionEp lhs = dorfman(SectionEp(h[0].X, d(h[0].alpha)), SectionEp(h[1].X, d(h[1].alpha)));
        CHECK(lhs == SectionEp(lie_bracket(h[0].X, h[1].X), d(ham_bracket(h[0], h[1]))));
        // changing X by the kernel generator leaves the bracket alone
        HamiltonianDatum shifted{h[0].alpha, h[0].X + rng.poly(n, 1, 2) * D(n, 4)};
        CHECK(hamiltonian_verify(G, shifted.alpha, shifted.X));
        CHECK(ham_bracket(shifted, h[1]) == ham_bracket(h[0], h[1]));
    }
    // kernel directions annihilate the form parts of L
    for (auto& g : G.generators()) CHECK(interior(D(n, 4), g.alpha).is_zero());

    Presentation T(ScaledTop{x(3, 1), vol(3)});
    auto tb = hamiltonian_basis(T, 2, 1);
    for (int t = 0; t < 10; ++t) {
        auto h = random_tuple(rng, tb, 3);
        CHECK((ham_bracket(h[0], h[1]) + ham_bracket(h[1], h[0])).is_zero());
        CHECK(jacobiator_residual(h[0], h[1], h[2]).is_zero());
    }
}

TEST_CASE("sections of an involutive isotropic presentation form a Lie algebroid") {
    Sampler rng(40);
    std::vector<Presentation> ps{Presentation(GraphForm{d(rng.form(3, 2, 2))}),
                                 Presentation(Regular{identity_frame(4), {0, 1}, dxs(4, 1, 2, 3)}),
                                 Presentation(ScaledTop{x(3, 1), vol(3)}), Presentation(GraphMultivector{Ds(3, 1, 2)})};
    for (auto& P : ps)
        for (int t = 0; t < 4; ++t) {
            SectionEp a = random_member(rng, P), b = random_member(rng, P), e = random_member(rng, P);
            CHECK(member(P, dorfman(a, b)));
            CHECK((dorfman(a, b) + dorfman(b, a)).is_zero());
            CHECK(dorfman(a, dorfman(b, e)) == dorfman(dorfman(a, b), e) + dorfman(b, dorfman(a, e)));
            Poly f = rng.poly(P.dim(), 1, 2);
            CHECK(dorfman(a, f * b) == f * dorfman(a, b) + a.X.apply(f) * b);
        }
}

TEST_CASE("contracted bracket identity") {
    Sampler rng(41);
    // constant top forms: every form is Hamiltonian
    for (int n = 3; n <= 5; ++n) {
        int p = n - 1;
        Presentation P(GraphForm{vol(n) * Rat(n - 1)});
        for (int t = 0; t < 4; ++t) {
            std::vector<HamiltonianDatum> h;
            for (int k = 0; k < n; ++k) {
                Form a = rng.form(n, p - 1, 2, 2, 0.6);
                h.push_back({a, *hamiltonian_solve(P, a)});
            }
            for (int m = 3; m <= n; ++m) {
                std::vector<HamiltonianDatum> head(h.begin(), h.begin() + m);
                CHECK(contracted_bracket_residual(head).is_zero());
            }
        }
    }
    // polynomial closed forms
    for (int t = 0; t < 6; ++t) {
        int n = 4 + t % 2;
        Form w0 = rng.constant_form(n, n - 1);
        auto basis0 = hamiltonian_basis(Presentation(GraphForm{w0}), 2, 1);
        auto [P, basis] = pulled_back(rng, w0, basis0);
        for (auto& h : basis) REQUIRE(hamiltonian_verify(P, h.alpha, h.X));
        for (int m = 3; m <= 5; ++m) CHECK(contracted_bracket_residual(random_tuple(rng, basis, m)).is_zero());
    }
}
