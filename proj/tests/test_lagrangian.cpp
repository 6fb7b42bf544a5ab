#include "diracspace/lagrangian.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace testsupport;

namespace {

RatVec unit(int n, int i) {
    RatVec v(n);
    v[i] = 1;
    return v;
}

LinSubspace nonmaximal_nambu() {
    int n = 4;
    return graph_over_subspace(n, {unit(n, 0), unit(n, 1)}, dxs(n, 1, 2, 3));
}

LinSubspace graph_minus(const Form& w) {
    int n = w.dim();
    std::vector<SectionEp> gens;
    for (int i = 0; i < n; ++i) gens.emplace_back(VField::basis(n, i), -interior(VField::basis(n, i), w));
    return LinSubspace::ep(n, w.degree() - 1, gens);
}

} // namespace

TEST_CASE("exact linear algebra") {
    RatMatrix A = RatMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}, 3);
    CHECK(rank(A) == 2);
    auto K = kernel(A);
    REQUIRE(K.size() == 1);
    CHECK(is_zero(A.apply(K[0])));
    auto x = solve(A, {Rat(6), Rat(12), Rat(2)});
    REQUIRE(x.has_value());
    CHECK(A.apply(*x) == RatVec{6, 12, 2});
    CHECK_FALSE(solve(A, {Rat(1), Rat(0), Rat(0)}).has_value());
    CHECK(span_basis({{2, 4}, {1, 2}}, 2) == std::vector<RatVec>{{1, 2}});
}

TEST_CASE("perp examples") {
    int n = 3;
    std::vector<SectionEp> tgens;
    for (int i = 0; i < n; ++i) tgens.push_back(SectionEp::vector(VField::basis(n, i), 1));
    LinSubspace T0 = LinSubspace::ep(n, 1, tgens);
    CHECK(perp(T0) == T0);
    std::vector<SectionEp> fgens;
    for (Mask m : lex_masks(n, 2)) fgens.push_back(SectionEp::form(Form::basis(n, m)));
    LinSubspace F = LinSubspace::ep(n, 2, fgens);
    CHECK(perp(F) == F);
    Sampler rng(4);
    for (int p = 1; p <= 2; ++p) {
        Form w = rng.constant_form(n, p + 1);
        LinSubspace G = graph_minus(w);
        CHECK(perp(G) == G);
    }
}

TEST_CASE("classify examples") {
    LinSubspace L = nonmaximal_nambu();
    CHECK(L.dim() == 3);
    Classification c = classify(L);
    CHECK(c.isotropic);
    CHECK(c.lagrangian);
    CHECK(c.lagrangian_by_annihilator);
    int n = 3;
    LinSubspace one = LinSubspace::ep(n, 2, {SectionEp(D(n, 1), dxs(n, 2, 3))});
    c = classify(one);
    CHECK(c.isotropic);
    CHECK_FALSE(c.lagrangian);
    CHECK_FALSE(c.lagrangian_by_annihilator);
    LinSubspace zero(n, 1, 2, {});
    c = classify(zero);
    CHECK(c.isotropic);
    CHECK_FALSE(c.lagrangian);
    CHECK_FALSE(c.lagrangian_by_annihilator);
}

TEST_CASE("to_pair and from_pair examples") {
    int n = 3;
    Sampler rng(6);
    Form w = rng.constant_form(n, 3);
    LagrangianPair pr = to_pair(graph_minus(w));
    CHECK(pr.S.size() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            CHECK(pr.Omega[{i, j}] == form_coords(-interior(D(n, j + 1), interior(D(n, i + 1), w))));
    std::vector<SectionEp> fgens;
    for (Mask m : lex_masks(n, 2)) fgens.push_back(SectionEp::form(Form::basis(n, m)));
    LinSubspace F = LinSubspace::ep(n, 2, fgens);
    LagrangianPair empty = to_pair(F);
    CHECK(empty.S.empty());
    CHECK(empty.Omega.empty());
    CHECK(from_pair(empty) == F);
    LagrangianPair h = to_pair(nonmaximal_nambu());
    CHECK(h.S == std::vector<RatVec>{unit(4, 0), unit(4, 1)});
    CHECK(h.Omega.at({0, 1}) == form_coords(dx(4, 3)));
    CHECK(from_pair(h) == nonmaximal_nambu());
    CHECK_THROWS_AS(to_pair(LinSubspace(n, 1, 2, {})), NotLagrangian);
    // S of dimension 2 in R^3 with p = 2 violates the constraint
    LagrangianPair bad{3, 2, {unit(3, 0), unit(3, 1)}, {}};
    CHECK_THROWS(from_pair(bad));
    // Omega(s1,s2) = dx1 is not a restriction of a 3-form since it does not vanish on s1
    LagrangianPair nonext{3, 2, {unit(3, 0), unit(3, 1), unit(3, 2)}, {{{0, 1}, form_coords(dx(3, 1))}}};
    CHECK_THROWS(from_pair(nonext));
}

TEST_CASE("round trip on random Lagrangians") {
    Sampler rng(100);
    for (int t = 0; t < 60; ++t) {
        int n = 2 + t % 3, p = 1 + t % std::min(3, n);
        LinSubspace L = random_lagrangian(rng, n, p);
        Classification c = classify(L);
        CHECK(c.lagrangian);
        CHECK(c.lagrangian_by_annihilator);
        int k = static_cast<int>(projection_T(L).size());
        CHECK(dimension_constraint(n, p, k));
        CHECK(L.dim() == k + static_cast<int>(lex_masks(n - k, p).size()));
        LagrangianPair pr = to_pair(L);
        CHECK(from_pair(pr) == L);
        CHECK(to_pair(from_pair(pr)) == pr);
        CHECK(graph_over_subspace(n, pr.S, describing_form(L)) == L);
    }
}

TEST_CASE("extend_to_form examples") {
    int n = 3;
    Form w = extend_to_form(n, {unit(n, 0)}, {dx(n, 2)}, {unit(n, 1), unit(n, 2)});
    CHECK(evaluate(w, {D(n, 1), D(n, 2)}) == c(n, 1));
    CHECK(evaluate(w, {D(n, 1), D(n, 3)}).is_zero());
    Sampler rng(7);
    for (int t = 0; t < 30; ++t) {
        int n2 = 3 + t % 2, p = 1 + t % 3;
        if (p >= n2) p = n2 - 1;
        Form om = rng.constant_form(n2, p + 1);
        int k = static_cast<int>(rng.uniform(1, n2));
        auto S = random_subspace_of_qn(rng, n2, k);
        std::vector<Form> beta;
        for (auto& s : S) beta.push_back(interior(coords_vfield(s), om));
        Form ext = extend_to_form(n2, S, beta, orthogonal_complement(n2, S));
        for (std::size_t i = 0; i < S.size(); ++i) CHECK(interior(coords_vfield(S[i]), ext) == beta[i]);
        if (k == n2) CHECK(ext == om);
    }
    CHECK_THROWS(extend_to_form(n, {unit(n, 0), unit(n, 1)}, {dx(n, 2), dx(n, 2)}, {unit(n, 2)}));
}

TEST_CASE("graph over subspace examples") {
    int n = 4;
    CHECK(nonmaximal_nambu().dim() == 2 + 1);
    LinSubspace zero = graph_over_subspace(n, {}, Form(n, 3));
    CHECK(zero.dim() == 6);
    CHECK(projection_T(zero).empty());
    Sampler rng(8);
    Form w = rng.constant_form(3, 2);
    std::vector<RatVec> all{unit(3, 0), unit(3, 1), unit(3, 2)};
    LagrangianPair pr = to_pair(graph_over_subspace(3, all, w));
    CHECK(from_pair(pr) == graph_over_subspace(3, all, w));
    CHECK(graph_over_subspace(3, all, w) == graph_minus(-w));
    CHECK_THROWS(graph_over_subspace(4, {unit(4, 0), unit(4, 1), unit(4, 2)}, dxs(4, 1, 2, 3)));
}

TEST_CASE("multi-Dirac tiers") {
    LinSubspace L = nonmaximal_nambu();
    CHECK(multidirac_tier(L, 1) == L);
    LinSubspace D2 = multidirac_tier(L, 2);
    CHECK(D2 == perp(L, 2));
    Sampler rng(9);
    for (int t = 0; t < 25; ++t) {
        int n = 3 + t % 2, p = 1 + t % 3;
        if (p > n - 1) p = n - 1;
        LinSubspace G = random_lagrangian(rng, n, p);
        std::vector<LinSubspace> D;
        for (int r = 1; r <= p; ++r) D.push_back(multidirac_tier(G, r));
        CHECK(D[0] == G);
        for (int r = 1; r <= p; ++r)
            for (int s = 1; r + s <= p + 1; ++s) {
                CHECK(perp(D[s - 1], r) == D[r - 1]);
                for (auto& a : D[r - 1].basis())
                    for (auto& b : D[s - 1].basis())
                        CHECK(multi_pairing(D[r - 1].section(a), D[s - 1].section(b)).is_zero());
            }
    }
}

TEST_CASE("Nambu-Dirac conditions") {
    NambuDiracCheck h = nambu_dirac_check(nonmaximal_nambu());
    CHECK(h.iso_weak);
    CHECK_FALSE(h.maximal);
    Sampler rng(10);
    Form w = rng.constant_form(3, 3);
    NambuDiracCheck g = nambu_dirac_check(graph_minus(w));
    CHECK(g.iso_weak);
    CHECK(g.maximal);
    // S = 0: wedge^p S = 0, while pr(L^{perp,p}) is S ^ wedge^{p-1} T = 0 as well
    std::vector<SectionEp> fgens;
    for (Mask m : lex_masks(3, 2)) fgens.push_back(SectionEp::form(Form::basis(3, m)));
    NambuDiracCheck z = nambu_dirac_check(LinSubspace::ep(3, 2, fgens));
    CHECK(z.iso_weak);
    CHECK(z.maximal);
}

TEST_CASE("classification verdicts agree on random subspaces") {
    Sampler rng(11);
    for (int t = 0; t < 150; ++t) {
        int n = 2 + t % 3, p = 1 + t % 2;
        LinSubspace L = t % 3 == 0 ? random_lagrangian(rng, n, p) : random_subspace(rng, n, 1, p, n + 2);
        Classification c = classify(L);
        CHECK(c.lagrangian == c.lagrangian_by_annihilator);
        if (c.lagrangian) CHECK(c.isotropic);
    }
}
