#include "diracspace/lagrangian.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace diracspace {

namespace {

int choose(int n, int k) { return static_cast<int>(lex_masks(n, k).size()); }

template <class Map>
RatVec coords_of(int n, int k, const Map& comps) {
    const auto& masks = lex_masks(n, k);
    RatVec v(masks.size());
    for (std::size_t i = 0; i < masks.size(); ++i) {
        auto it = comps.find(masks[i]);
        if (it == comps.end()) continue;
        if (!it->second.is_constant()) throw std::invalid_argument("pointwise linear algebra needs constant coefficients");
        v[i] = it->second.constant_term();
    }
    return v;
}

void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> idx;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(idx.size()) == k) {
            f(idx);
            return;
        }
        for (int i = start; i < m; ++i) {
            idx.push_back(i);
            rec(i + 1);
            idx.pop_back();
        }
    };
    rec(0);
}

RatVec linear_combination(const std::vector<RatVec>& vs, const RatVec& c, int dim) {
    RatVec out(dim);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (c[i].is_zero()) continue;
        for (int j = 0; j < dim; ++j) out[j] += c[i] * vs[i][j];
    }
    return out;
}

// Solves for alpha with X + alpha in L, X given; nothing if X is not in pr_T L.
std::optional<Form> form_partner(const LinSubspace& L, const RatVec& X) {
    int nv = L.vpart_dim();
    RatMatrix A(nv, L.dim());
    for (int j = 0; j < L.dim(); ++j)
        for (int i = 0; i < nv; ++i) A(i, j) = L.basis()[j][i];
    auto c = solve(A, X);
    if (!c) return std::nullopt;
    RatVec v = linear_combination(L.basis(), *c, L.ambient_dim());
    return L.split(v).second;
}

} // namespace

RatVec form_coords(const Form& a) { return coords_of(a.dim(), a.degree(), a.comps()); }
RatVec multivec_coords(const MultiVec& Y) { return coords_of(Y.dim(), Y.degree(), Y.comps()); }

Form coords_form(int n, int k, const RatVec& v) {
    const auto& masks = lex_masks(n, k);
    if (v.size() != masks.size()) throw std::invalid_argument("coordinate vector has wrong length");
    Form a(n, k);
    for (std::size_t i = 0; i < masks.size(); ++i) a.add(masks[i], Poly(n, v[i]));
    return a;
}

MultiVec coords_multivec(int n, int k, const RatVec& v) {
    const auto& masks = lex_masks(n, k);
    if (v.size() != masks.size()) throw std::invalid_argument("coordinate vector has wrong length");
    MultiVec Y(n, k);
    for (std::size_t i = 0; i < masks.size(); ++i) Y.add(masks[i], Poly(n, v[i]));
    return Y;
}

VField coords_vfield(const RatVec& v) {
    int n = static_cast<int>(v.size());
    VField X(n);
    for (int i = 0; i < n; ++i) X[i] = Poly(n, v[i]);
    return X;
}

// ---- LinSubspace ----

LinSubspace::LinSubspace(int n, int vdeg, int fdeg, const std::vector<RatVec>& spanning)
    : n_(n), vdeg_(vdeg), fdeg_(fdeg) {
    for (auto& v : spanning)
        if (static_cast<int>(v.size()) != ambient_dim()) throw std::invalid_argument("spanning vector has wrong length");
    basis_ = span_basis(spanning, ambient_dim());
}

LinSubspace LinSubspace::ep(int n, int p, const std::vector<SectionEp>& spanning) {
    LinSubspace shape(n, 1, p, {});
    std::vector<RatVec> vs;
    for (auto& e : spanning) vs.push_back(shape.element(MultiVec(e.X), e.alpha));
    return LinSubspace(n, 1, p, vs);
}

int LinSubspace::ambient_dim() const { return choose(n_, vdeg_) + choose(n_, fdeg_); }
int LinSubspace::vpart_dim() const { return choose(n_, vdeg_); }

RatVec LinSubspace::element(const MultiVec& Y, const Form& eta) const {
    if (Y.degree() != vdeg_ || eta.degree() != fdeg_) throw DegreeError("element does not live in this bundle");
    RatVec v = multivec_coords(Y);
    RatVec f = form_coords(eta);
    v.insert(v.end(), f.begin(), f.end());
    return v;
}

std::pair<MultiVec, Form> LinSubspace::split(const RatVec& v) const {
    int nv = vpart_dim();
    RatVec a(v.begin(), v.begin() + nv), b(v.begin() + nv, v.end());
    return {coords_multivec(n_, vdeg_, a), coords_form(n_, fdeg_, b)};
}

SectionPr LinSubspace::section(const RatVec& v) const {
    auto [Y, eta] = split(v);
    return SectionPr(order(), Y, eta);
}

bool LinSubspace::contains(const RatVec& v) const { return in_span(basis_, v); }

bool LinSubspace::contains(const LinSubspace& o) const {
    for (auto& v : o.basis_)
        if (!contains(v)) return false;
    return true;
}

// ---- perps and projections ----

LinSubspace perp(const LinSubspace& V, int r) {
    int p = V.order();
    int s = V.vdeg();
    if (r < 1 || r > p || r + s > p + 1) throw DegreeError("tier out of range for the perp");
    LinSubspace shape(V.n(), r, p + 1 - r, {});
    int N = shape.ambient_dim();
    int out = choose(V.n(), p + 1 - r - s);
    RatMatrix A(out * V.dim(), N);
    std::vector<SectionPr> sections;
    for (auto& b : V.basis()) sections.push_back(V.section(b));
    for (int i = 0; i < N; ++i) {
        RatVec e(N);
        e[i] = 1;
        SectionPr u = shape.section(e);
        for (int j = 0; j < V.dim(); ++j) {
            RatVec c = form_coords(multi_pairing(u, sections[j]));
            for (int k = 0; k < out; ++k) A(j * out + k, i) = c[k];
        }
    }
    return LinSubspace(V.n(), r, p + 1 - r, kernel(A));
}

LinSubspace perp(const LinSubspace& L) {
    if (L.vdeg() != 1) throw DegreeError("perp expects a subspace of T + wedge^p T*");
    int n = L.n(), p = L.fdeg();
    int N = L.ambient_dim();
    int out = choose(n, p - 1);
    RatMatrix A(out * L.dim(), N);
    std::vector<SectionEp> sections;
    for (auto& b : L.basis()) sections.push_back(L.section(b).to_ep());
    for (int i = 0; i < N; ++i) {
        RatVec e(N);
        e[i] = 1;
        SectionEp u = L.section(e).to_ep();
        for (int j = 0; j < L.dim(); ++j) {
            RatVec c = form_coords(pairing(u, sections[j]));
            for (int k = 0; k < out; ++k) A(j * out + k, i) = c[k];
        }
    }
    return LinSubspace(n, 1, p, kernel(A));
}

std::vector<RatVec> projection_T(const LinSubspace& L) {
    int nv = L.vpart_dim();
    std::vector<RatVec> vs;
    for (auto& b : L.basis()) vs.emplace_back(b.begin(), b.begin() + nv);
    return span_basis(vs, nv);
}

std::vector<RatVec> annihilator(int n, const std::vector<RatVec>& S) {
    if (S.empty()) {
        std::vector<RatVec> all;
        for (int i = 0; i < n; ++i) {
            RatVec e(n);
            e[i] = 1;
            all.push_back(e);
        }
        return all;
    }
    return span_basis(kernel(RatMatrix::from_rows(S, n)), n);
}

std::vector<RatVec> wedge_power_forms(int n, const std::vector<RatVec>& covectors, int k) {
    std::vector<RatVec> out;
    if (k < 0 || k > n) return out;
    for_each_subset(static_cast<int>(covectors.size()), k, [&](const std::vector<int>& idx) {
        Form a = Form::scalar(Poly(n, 1));
        for (int i : idx) a = wedge(a, coords_form(n, 1, covectors[i]));
        out.push_back(form_coords(a));
    });
    return span_basis(out, choose(n, k));
}

std::vector<RatVec> wedge_power_vectors(int n, const std::vector<RatVec>& vectors, int k) {
    std::vector<RatVec> out;
    if (k < 0 || k > n) return out;
    for_each_subset(static_cast<int>(vectors.size()), k, [&](const std::vector<int>& idx) {
        MultiVec a = MultiVec::basis(n, 0);
        for (int i : idx) a = wedge(a, coords_multivec(n, 1, vectors[i]));
        out.push_back(multivec_coords(a));
    });
    return span_basis(out, choose(n, k));
}

std::vector<RatVec> form_part_intersection(const LinSubspace& L) {
    int nv = L.vpart_dim();
    RatMatrix A(nv, L.dim());
    for (int j = 0; j < L.dim(); ++j)
        for (int i = 0; i < nv; ++i) A(i, j) = L.basis()[j][i];
    std::vector<RatVec> out;
    for (auto& c : kernel(A)) {
        RatVec v = linear_combination(L.basis(), c, L.ambient_dim());
        out.emplace_back(v.begin() + nv, v.end());
    }
    return span_basis(out, L.ambient_dim() - nv);
}

bool dimension_constraint(int n, int p, int dim_s) { return dim_s <= n - p || dim_s == n; }

Classification classify(const LinSubspace& L) {
    if (L.vdeg() != 1) throw DegreeError("classify expects a subspace of T + wedge^p T*");
    int n = L.n(), p = L.fdeg();
    Classification c;
    c.isotropic = true;
    std::vector<SectionEp> sections;
    for (auto& b : L.basis()) sections.push_back(L.section(b).to_ep());
    for (std::size_t i = 0; i < sections.size() && c.isotropic; ++i)
        for (std::size_t j = i; j < sections.size() && c.isotropic; ++j)
            if (!pairing(sections[i], sections[j]).is_zero()) c.isotropic = false;
    c.lagrangian = perp(L) == L;
    auto S = projection_T(L);
    bool ann = form_part_intersection(L) == wedge_power_forms(n, annihilator(n, S), p);
    c.lagrangian_by_annihilator = c.isotropic && ann && dimension_constraint(n, p, static_cast<int>(S.size()));
    return c;
}

LagrangianPair to_pair(const LinSubspace& L) {
    if (L.vdeg() != 1) throw DegreeError("to_pair expects a subspace of T + wedge^p T*");
    if (!(perp(L) == L)) throw NotLagrangian("subspace is not Lagrangian");
    LagrangianPair pr;
    pr.n = L.n();
    pr.p = L.fdeg();
    pr.S = projection_T(L);
    std::vector<Form> alpha;
    for (auto& s : pr.S) alpha.push_back(*form_partner(L, s));
    for (std::size_t i = 0; i < pr.S.size(); ++i)
        for (std::size_t j = i + 1; j < pr.S.size(); ++j)
            pr.Omega[{int(i), int(j)}] = form_coords(interior(coords_vfield(pr.S[j]), alpha[i]));
    return pr;
}

namespace {

RatVec omega_entry(const LagrangianPair& pr, int i, int j) {
    int len = choose(pr.n, pr.p - 1);
    if (i == j) return RatVec(len);
    if (i < j) {
        auto it = pr.Omega.find({i, j});
        return it == pr.Omega.end() ? RatVec(len) : it->second;
    }
    RatVec v = omega_entry(pr, j, i);
    for (auto& x : v) x = -x;
    return v;
}

} // namespace

LinSubspace from_pair(const LagrangianPair& pr) {
    int n = pr.n, p = pr.p, k = static_cast<int>(pr.S.size());
    if (!dimension_constraint(n, p, k)) throw std::invalid_argument("dim S violates the Lagrangian dimension constraint");
    if (span_basis(pr.S, n).size() != pr.S.size()) throw std::invalid_argument("S basis is not linearly independent");
    int nf = choose(n, p), out = choose(n, p - 1);
    // unknowns: c (k entries), alpha (nf entries); equations i_{s_j} alpha - sum_i c_i Omega(s_i, s_j) = 0
    RatMatrix A(out * k, k + nf);
    for (int j = 0; j < k; ++j) {
        VField sj = coords_vfield(pr.S[j]);
        for (int i = 0; i < k; ++i) {
            RatVec w = omega_entry(pr, i, j);
            for (int t = 0; t < out; ++t) A(j * out + t, i) = -w[t];
        }
        for (int m = 0; m < nf; ++m) {
            RatVec e(nf);
            e[m] = 1;
            RatVec c = form_coords(interior(sj, coords_form(n, p, e)));
            for (int t = 0; t < out; ++t) A(j * out + t, k + m) = c[t];
        }
    }
    std::vector<RatVec> gens;
    for (auto& sol : kernel(A)) {
        RatVec X(n);
        for (int i = 0; i < k; ++i)
            for (int t = 0; t < n; ++t) X[t] += sol[i] * pr.S[i][t];
        RatVec v = X;
        v.insert(v.end(), sol.begin() + k, sol.end());
        gens.push_back(v);
    }
    LinSubspace L(n, 1, p, gens);
    if (!(projection_T(L) == span_basis(pr.S, n))) throw std::invalid_argument("Omega is not the restriction of a (p+1)-form");
    if (k > 0) {
        std::vector<Form> beta;
        for (auto& s : pr.S) beta.push_back(*form_partner(L, s));
        extend_to_form(n, pr.S, beta, orthogonal_complement(n, pr.S));
    }
    return L;
}

std::vector<RatVec> orthogonal_complement(int n, const std::vector<RatVec>& S) { return annihilator(n, S); }

Form extend_to_form(int n, const std::vector<RatVec>& S, const std::vector<Form>& beta, const std::vector<RatVec>& C) {
    int k = static_cast<int>(S.size());
    if (static_cast<int>(beta.size()) != k) throw std::invalid_argument("one beta value per S basis vector required");
    if (k == 0) throw std::invalid_argument("extension needs a nonzero S");
    int p = beta[0].degree();
    std::vector<RatVec> E = S;
    E.insert(E.end(), C.begin(), C.end());
    if (static_cast<int>(E.size()) != n || rank(RatMatrix::from_rows(E, n)) != n)
        throw std::invalid_argument("S and C do not form a basis");
    // dual basis: e*_j(e_i) = delta_ij, i.e. columns of the inverse of the row matrix
    RatMatrix M = RatMatrix::from_rows(E, n);
    std::vector<Form> dual(n);
    std::vector<VField> basis;
    for (auto& e : E) basis.push_back(coords_vfield(e));
    for (int j = 0; j < n; ++j) {
        RatVec unit(n);
        unit[j] = 1;
        auto col = solve(M, unit);
        dual[j] = coords_form(n, 1, *col);
    }
    Form bbar(n, p + 1);
    for (int i = 0; i < k; ++i) bbar += wedge(dual[i], beta[i]);
    bbar *= Rat(1, p + 1);
    Form omega(n, p + 1);
    Mask smask = k >= 32 ? ~Mask(0) : (Mask(1) << k) - 1;
    for (Mask J : lex_masks(n, p + 1)) {
        int q = popcount(J & smask);
        if (q == 0) continue;
        std::vector<VField> args;
        for (int j : mask_axes(J)) args.push_back(basis[j]);
        Rat v = evaluate(bbar, args).constant_term();
        if (v.is_zero()) continue;
        Form t = Form::scalar(Poly(n, v * Rat(p + 1) / Rat(q)));
        for (int j : mask_axes(J)) t = wedge(t, dual[j]);
        omega += t;
    }
    for (int i = 0; i < k; ++i)
        if (!(interior(basis[i], omega) == beta[i])) throw std::invalid_argument("beta is not skew on S: no extension exists");
    return omega;
}

Form describing_form(const LinSubspace& L) {
    int n = L.n(), p = L.fdeg();
    auto S = projection_T(L);
    if (S.empty()) return Form(n, p + 1);
    std::vector<Form> beta;
    for (auto& s : S) beta.push_back(*form_partner(L, s));
    return extend_to_form(n, S, beta, orthogonal_complement(n, S));
}

LinSubspace graph_over_subspace(int n, const std::vector<RatVec>& S, const Form& omega) {
    int p = omega.degree() - 1;
    auto Sb = span_basis(S, n);
    if (!dimension_constraint(n, p, static_cast<int>(Sb.size()))) throw std::invalid_argument("dim S violates the Lagrangian dimension constraint");
    LinSubspace shape(n, 1, p, {});
    std::vector<RatVec> gens;
    for (auto& s : Sb) {
        VField X = coords_vfield(s);
        gens.push_back(shape.element(MultiVec(X), interior(X, omega)));
    }
    for (auto& xi : wedge_power_forms(n, annihilator(n, Sb), p)) {
        RatVec v(n);
        v.insert(v.end(), xi.begin(), xi.end());
        gens.push_back(v);
    }
    return LinSubspace(n, 1, p, gens);
}

LinSubspace multidirac_tier_formula(const LinSubspace& L, int r) {
    int n = L.n(), p = L.fdeg();
    if (r < 1 || r > p) throw DegreeError("tier must satisfy 1 <= r <= p");
    auto S = projection_T(L);
    Form omega = describing_form(L);
    LinSubspace shape(n, r, p + 1 - r, {});
    std::vector<RatVec> gens;
    for (auto& s : S)
        for (Mask m : lex_masks(n, r - 1)) {
            MultiVec Y = wedge(coords_multivec(n, 1, s), MultiVec::basis(n, m));
            if (Y.is_zero()) continue;
            gens.push_back(shape.element(Y, contract(Y, omega)));
        }
    int nv = shape.vpart_dim();
    for (auto& xi : wedge_power_forms(n, annihilator(n, S), p + 1 - r)) {
        RatVec v(nv);
        v.insert(v.end(), xi.begin(), xi.end());
        gens.push_back(v);
    }
    return LinSubspace(n, r, p + 1 - r, gens);
}

LinSubspace multidirac_tier(const LinSubspace& L, int r) {
    LinSubspace a = multidirac_tier_formula(L, r);
    LinSubspace b = perp(L, r);
    if (!(a == b)) throw std::logic_error("tier frame formula and brute-force perp disagree");
    return a;
}

std::vector<RatVec> random_subspace_of_qn(Sampler& rng, int n, int k) {
    for (;;) {
        std::vector<RatVec> rows;
        for (int i = 0; i < k; ++i) {
            RatVec v(n);
            for (auto& x : v) x = Rat(rng.uniform(-2, 2));
            rows.push_back(v);
        }
        auto b = span_basis(rows, n);
        if (static_cast<int>(b.size()) == k) return b;
    }
}

LinSubspace random_lagrangian(Sampler& rng, int n, int p) {
    std::vector<int> dims;
    for (int k = 0; k <= n; ++k)
        if (dimension_constraint(n, p, k)) dims.push_back(k);
    int k = dims[rng.uniform(0, static_cast<long>(dims.size()) - 1)];
    Form omega(n, p + 1);
    for (Mask m : lex_masks(n, p + 1))
        if (rng.coin()) omega.add(m, Poly(n, Rat(rng.uniform(-3, 3))));
    return graph_over_subspace(n, random_subspace_of_qn(rng, n, k), omega);
}

LinSubspace random_subspace(Sampler& rng, int n, int vdeg, int fdeg, int max_dim) {
    LinSubspace shape(n, vdeg, fdeg, {});
    int N = shape.ambient_dim();
    int k = static_cast<int>(rng.uniform(0, std::min(max_dim, N)));
    std::vector<RatVec> rows;
    for (int i = 0; i < k; ++i) {
        RatVec v(N);
        for (auto& x : v) x = rng.coin() ? Rat(0) : Rat(rng.uniform(-2, 2));
        rows.push_back(v);
    }
    return LinSubspace(n, vdeg, fdeg, rows);
}

NambuDiracCheck nambu_dirac_check(const LinSubspace& L) {
    int n = L.n(), p = L.fdeg();
    NambuDiracCheck out;
    auto S = projection_T(L);
    std::vector<SectionEp> sections;
    for (auto& b : L.basis()) sections.push_back(L.section(b).to_ep());
    out.iso_weak = true;
    for (std::size_t i = 0; i < sections.size() && out.iso_weak; ++i)
        for (std::size_t j = i; j < sections.size() && out.iso_weak; ++j) {
            Form g = pairing(sections[i], sections[j]);
            for_each_subset(static_cast<int>(S.size()), p - 1, [&](const std::vector<int>& idx) {
                std::vector<VField> args;
                for (int t : idx) args.push_back(coords_vfield(S[t]));
                if (!evaluate(g, args).is_zero()) out.iso_weak = false;
            });
        }
    LinSubspace P = perp(L, p);
    out.maximal = wedge_power_vectors(n, S, p) == projection_T(P);
    return out;
}

} // namespace diracspace
