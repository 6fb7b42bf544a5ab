#include "diracspace/presentation.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace diracspace {

namespace {

Form covector_form(const RatVec& c) {
    int n = static_cast<int>(c.size());
    Form r(n, 1);
    for (int i = 0; i < n; ++i)
        if (!c[i].is_zero()) r.add(Mask(1) << i, Poly(n, c[i]));
    return r;
}

VField vector_field(const RatVec& v) {
    int n = static_cast<int>(v.size());
    VField X(n);
    for (int i = 0; i < n; ++i) X[i] = Poly(n, v[i]);
    return X;
}

Poly pair_covector(const RatVec& theta, const VField& X) {
    Poly r(X.dim());
    for (int i = 0; i < X.dim(); ++i)
        if (!theta[i].is_zero()) r += X[i] * theta[i];
    return r;
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

std::vector<int> complement(int n, const std::vector<int>& axes) {
    std::vector<int> r;
    for (int i = 0; i < n; ++i)
        if (!contains(axes, i)) r.push_back(i);
    return r;
}

// W with i_W Omega = -alpha, when the top form coefficient divides alpha.
std::optional<VField> top_solve(const Form& Omega, const Form& alpha) {
    int n = Omega.dim();
    Mask all = (Mask(1) << n) - 1;
    Poly g = Omega.component(all);
    VField W(n);
    for (int i = 0; i < n; ++i) {
        auto q = alpha.component(all & ~(Mask(1) << i)).divide_exact(g);
        if (!q) return std::nullopt;
        W[i] = i % 2 ? *q : -*q;
    }
    return W;
}

std::vector<Exponents> monomials(int n, int max_degree) {
    std::vector<Exponents> out;
    Exponents e{};
    auto rec = [&](auto&& self, int axis, int left) -> void {
        if (axis == n) {
            out.push_back(e);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[axis] = static_cast<std::uint8_t>(k);
            self(self, axis + 1, left - k);
        }
        e[axis] = 0;
    };
    if (max_degree >= 0) rec(rec, 0, max_degree);
    return out;
}

} // namespace

Presentation::Presentation(Data data) : data_(std::move(data)) {
    if (auto* g = std::get_if<GraphForm>(&data_)) {
        n_ = g->omega.dim();
        p_ = g->omega.degree() - 1;
        if (p_ < 1) throw PresentationError("graph of a form needs degree >= 2");
        for (int i = 0; i < n_; ++i) {
            VField X = VField::basis(n_, i);
            gens_.emplace_back(X, -interior(X, g->omega));
        }
    } else if (auto* m = std::get_if<GraphMultivector>(&data_)) {
        n_ = m->pi.dim();
        p_ = m->pi.degree() - 1;
        if (p_ < 1 || p_ + 1 > n_) throw PresentationError("graph of a multivector needs 2 <= degree <= n");
        if (!m->pi.is_zero() && p_ + 1 != 2 && p_ + 1 != n_)
            throw PresentationError("graph of a multivector is isotropic only in degree 2, top degree, or for zero");
        for (Mask J : lex_masks(n_, p_)) {
            Form a = Form::basis(n_, J);
            gens_.emplace_back(contract(a, m->pi).to_vfield(), a);
        }
    } else if (auto* r = std::get_if<Regular>(&data_)) {
        n_ = r->omega.dim();
        p_ = r->omega.degree() - 1;
        if (p_ < 1) throw PresentationError("regular presentation needs a form of degree >= 2");
        if (static_cast<int>(r->frame.size()) != n_) throw PresentationError("frame must have n vectors");
        for (auto& v : r->frame)
            if (static_cast<int>(v.size()) != n_) throw PresentationError("frame vectors must have length n");
        RatMatrix A = RatMatrix::from_rows(r->frame, n_);
        for (int j = 0; j < n_; ++j) {
            RatVec e(n_);
            e[j] = 1;
            auto t = solve(A, e);
            if (!t || rank(A) != n_) throw PresentationError("frame is not invertible");
            coframe_.push_back(*t);
        }
        std::vector<int> axes = r->axes;
        std::sort(axes.begin(), axes.end());
        if (std::adjacent_find(axes.begin(), axes.end()) != axes.end()) throw PresentationError("repeated axis");
        for (int a : axes)
            if (a < 0 || a >= n_) throw PresentationError("axis out of range");
        int k = static_cast<int>(axes.size());
        if (!(k <= n_ - p_ || k == n_)) throw PresentationError("dim S must be <= n - p or equal n");
        for (int a : axes) {
            VField v = vector_field(r->frame[a]);
            gens_.emplace_back(v, interior(v, r->omega));
        }
        std::vector<int> comp = complement(n_, axes);
        if (p_ <= static_cast<int>(comp.size()))
            for (Mask J : lex_masks(static_cast<int>(comp.size()), p_)) {
                Form w = Form::scalar(Poly(n_, 1));
                for (int t : mask_axes(J)) w = wedge(w, covector_form(coframe_[comp[t]]));
                gens_.push_back(SectionEp::form(w));
            }
    } else {
        auto& s = std::get<ScaledTop>(data_);
        n_ = s.Omega.dim();
        p_ = n_ - 1;
        if (n_ < 2 || s.Omega.degree() != n_) throw PresentationError("scaled top presentation needs a top form, n >= 2");
        if (s.Omega.is_zero()) throw PresentationError("top form must not vanish");
        if (s.f.dim() != n_) throw ContextMismatch("scaling function on another patch");
        for (int i = 0; i < n_; ++i) {
            VField X = VField::basis(n_, i);
            gens_.emplace_back(s.f * X, -interior(X, s.Omega));
        }
    }
}

std::string Presentation::kind() const {
    switch (data_.index()) {
    case 0: return "graph-form";
    case 1: return "graph-multivector";
    case 2: return "regular";
    default: return "scaled-top";
    }
}

std::vector<VField> Presentation::frame_fields(bool in_s) const {
    auto& r = std::get<Regular>(data_);
    std::vector<VField> out;
    for (int i = 0; i < n_; ++i)
        if (contains(r.axes, i) == in_s) out.push_back(vector_field(r.frame[i]));
    return out;
}

bool member(const Presentation& P, const SectionEp& e) {
    if (e.dim() != P.dim() || e.p != P.p()) throw ContextMismatch("section and presentation live on different bundles");
    return std::visit(
        [&](auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GraphForm>) {
                return e.alpha == -interior(e.X, v.omega);
            } else if constexpr (std::is_same_v<T, GraphMultivector>) {
                return e.X == contract(e.alpha, v.pi).to_vfield();
            } else if constexpr (std::is_same_v<T, Regular>) {
                for (int j = 0; j < P.dim(); ++j)
                    if (!contains(v.axes, j) && !pair_covector(P.coframe()[j], e.X).is_zero()) return false;
                Form b = e.alpha - interior(e.X, v.omega);
                for (auto& s : P.frame_fields(true))
                    if (!interior(s, b).is_zero()) return false;
                return true;
            } else {
                std::optional<VField> W;
                if (!v.f.is_zero()) {
                    VField w(P.dim());
                    for (int i = 0; i < P.dim(); ++i) {
                        auto q = e.X[i].divide_exact(v.f);
                        if (!q) return false;
                        w[i] = *q;
                    }
                    W = w;
                } else {
                    if (!e.X.is_zero()) return false;
                    W = top_solve(v.Omega, e.alpha);
                    if (!W) return false;
                }
                return e.X == v.f * *W && e.alpha == -interior(*W, v.Omega);
            }
        },
        P.data());
}

Report isotropy_report(const std::vector<SectionEp>& gens) {
    Report r{"isotropic", true, {}};
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i; j < gens.size(); ++j) {
            Form q = pairing(gens[i], gens[j]);
            if (!q.is_zero()) {
                r.pass = false;
                r.witnesses.push_back("<e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + "> = " + q.str());
            }
        }
    return r;
}

Report verify_isotropic(const Presentation& P) { return isotropy_report(P.generators()); }

Report dorfman_closure(const Presentation& P) {
    Report r{"dorfman-closure", true, {}};
    auto& g = P.generators();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            SectionEp b = dorfman(g[i], g[j]);
            if (!member(P, b)) {
                r.pass = false;
                r.witnesses.push_back("[[e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + "]] = " + b.str() +
                                      " is not in L");
            }
        }
    return r;
}

Report verify_involutive(const Presentation& P) {
    Report r{"involutive", true, {}};
    if (auto* g = std::get_if<GraphForm>(&P.data())) {
        Form dw = d(g->omega);
        if (!dw.is_zero()) {
            r.pass = false;
            r.witnesses.push_back("d omega = " + dw.str());
        }
    } else if (auto* reg = std::get_if<Regular>(&P.data())) {
        Form dw = d(reg->omega);
        auto S = P.frame_fields(true);
        for (std::size_t i = 0; i < S.size(); ++i)
            for (std::size_t j = i + 1; j < S.size(); ++j)
                for (std::size_t k = j + 1; k < S.size(); ++k) {
                    Form t = interior(S[k], interior(S[j], interior(S[i], dw)));
                    if (!t.is_zero()) {
                        r.pass = false;
                        r.witnesses.push_back("d omega(s" + std::to_string(i + 1) + ",s" + std::to_string(j + 1) + ",s" +
                                              std::to_string(k + 1) + ") = " + t.str());
                    }
                }
    } else {
        Report c = dorfman_closure(P);
        r.pass = c.pass;
        r.witnesses = std::move(c.witnesses);
    }
    return r;
}

bool hamiltonian_verify(const Presentation& P, const Form& alpha, const VField& X) {
    if (alpha.dim() != P.dim() || X.dim() != P.dim()) throw ContextMismatch("Hamiltonian pair on another patch");
    if (alpha.degree() != P.p() - 1) throw DegreeError("Hamiltonian forms have degree p - 1");
    return member(P, SectionEp(X, d(alpha)));
}

HamiltonianDatum make_hamiltonian(const Presentation& P, const Form& alpha, const VField& X) {
    if (!hamiltonian_verify(P, alpha, X)) throw NotHamiltonian("X + d alpha is not a section of L");
    return {alpha, X};
}

std::optional<VField> hamiltonian_solve(const Presentation& P, const Form& alpha) {
    const Form* omega = nullptr;
    std::vector<VField> dirs;
    if (auto* g = std::get_if<GraphForm>(&P.data())) {
        omega = &g->omega;
        for (int i = 0; i < P.dim(); ++i) dirs.push_back(VField::basis(P.dim(), i));
    } else if (auto* r = std::get_if<Regular>(&P.data())) {
        omega = &r->omega;
        dirs = P.frame_fields(true);
    } else {
        throw PresentationError("Hamiltonian solve needs a graph-form or regular presentation");
    }
    if (!omega->is_constant()) throw PresentationError("verification-only mode; supply X");
    if (alpha.degree() != P.p() - 1) throw DegreeError("Hamiltonian forms have degree p - 1");
    int n = P.dim();
    bool regular = std::holds_alternative<Regular>(P.data());
    auto S = dirs;
    // Linear condition on a constant combination c of dirs, one column per direction.
    auto image = [&](const VField& u) {
        std::vector<Form> out;
        if (regular)
            for (auto& s : S) out.push_back(interior(s, interior(u, *omega)));
        else
            out.push_back(-interior(u, *omega));
        return out;
    };
    auto target = [&](const Form& beta) {
        std::vector<Form> out;
        if (regular)
            for (auto& s : S) out.push_back(interior(s, beta));
        else
            out.push_back(beta);
        return out;
    };
    auto flatten = [&](const std::vector<Form>& fs) {
        RatVec v;
        for (auto& f : fs)
            for (Mask m : lex_masks(n, f.degree())) v.push_back(f.component(m).constant_term());
        return v;
    };
    std::vector<RatVec> cols;
    for (auto& u : dirs) cols.push_back(flatten(image(u)));
    std::size_t rows = cols.empty() ? 0 : cols[0].size();
    Form beta = d(alpha);
    std::map<Exponents, Form> parts;
    for (auto& [m, f] : beta.comps())
        for (auto& [e, c] : f.terms()) {
            auto it = parts.try_emplace(e, n, beta.degree()).first;
            it->second.add(m, Poly(n, c));
        }
    VField X(n);
    for (auto& [e, part] : parts) {
        RatVec rhs = flatten(target(part));
        if (cols.empty()) {
            if (!is_zero(rhs)) return std::nullopt;
            continue;
        }
        RatMatrix A(static_cast<int>(rows), static_cast<int>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < rows; ++i) A(static_cast<int>(i), static_cast<int>(j)) = cols[j][i];
        auto c = solve(A, rhs);
        if (!c) return std::nullopt;
        Poly mono = Poly::monomial(n, e, 1);
        for (std::size_t j = 0; j < dirs.size(); ++j)
            if (!(*c)[j].is_zero()) X += (mono * (*c)[j]) * dirs[j];
    }
    return X;
}

std::vector<HamiltonianDatum> hamiltonian_basis(const Presentation& P, int alpha_degree, int field_degree) {
    int n = P.dim(), p = P.p();
    bool top = std::holds_alternative<ScaledTop>(P.data());
    // Residual forms that vanish exactly when (alpha, Y) is Hamiltonian; for scaled-top Y is W with X = fW.
    auto residual = [&](const Form& alpha, const VField& Y) -> std::vector<Form> {
        Form beta = d(alpha);
        return std::visit(
            [&](auto& v) -> std::vector<Form> {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, GraphForm>) {
                    return {beta + interior(Y, v.omega)};
                } else if constexpr (std::is_same_v<T, GraphMultivector>) {
                    VField diff = Y - contract(beta, v.pi).to_vfield();
                    std::vector<Form> out;
                    for (int i = 0; i < n; ++i) out.push_back(Form::scalar(diff[i]));
                    return out;
                } else if constexpr (std::is_same_v<T, Regular>) {
                    std::vector<Form> out;
                    for (int j = 0; j < n; ++j)
                        if (!contains(v.axes, j)) out.push_back(Form::scalar(pair_covector(P.coframe()[j], Y)));
                    Form b = beta - interior(Y, v.omega);
                    for (auto& s : P.frame_fields(true)) out.push_back(interior(s, b));
                    return out;
                } else {
                    return {beta + interior(Y, v.Omega)};
                }
            },
            P.data());
    };
    struct Unknown {
        bool is_form;
        int slot;  // mask for forms, axis for fields
        Exponents e;
    };
    std::vector<Unknown> unknowns;
    for (Mask m : lex_masks(n, p - 1))
        for (auto& e : monomials(n, alpha_degree)) unknowns.push_back({true, static_cast<int>(m), e});
    for (int i = 0; i < n; ++i)
        for (auto& e : monomials(n, field_degree)) unknowns.push_back({false, i, e});
    auto realize = [&](const RatVec& c) {
        Form alpha(n, p - 1);
        VField Y(n);
        for (std::size_t k = 0; k < unknowns.size(); ++k) {
            if (c[k].is_zero()) continue;
            Poly mono = Poly::monomial(n, unknowns[k].e, c[k]);
            if (unknowns[k].is_form)
                alpha.add(static_cast<Mask>(unknowns[k].slot), mono);
            else
                Y[unknowns[k].slot] += mono;
        }
        return std::make_pair(alpha, Y);
    };
    std::map<std::tuple<int, Mask, Exponents>, int> row_of;
    std::vector<std::vector<std::pair<int, Rat>>> columns;
    for (std::size_t k = 0; k < unknowns.size(); ++k) {
        RatVec unit(unknowns.size());
        unit[k] = 1;
        auto [alpha, Y] = realize(unit);
        auto res = residual(alpha, Y);
        std::vector<std::pair<int, Rat>> col;
        for (std::size_t t = 0; t < res.size(); ++t)
            for (auto& [m, f] : res[t].comps())
                for (auto& [e, c] : f.terms()) {
                    auto key = std::make_tuple(static_cast<int>(t), m, e);
                    auto it = row_of.try_emplace(key, static_cast<int>(row_of.size())).first;
                    col.emplace_back(it->second, c);
                }
        columns.push_back(std::move(col));
    }
    RatMatrix A(static_cast<int>(row_of.size()), static_cast<int>(unknowns.size()));
    for (std::size_t k = 0; k < columns.size(); ++k)
        for (auto& [i, c] : columns[k]) A(i, static_cast<int>(k)) += c;
    std::vector<HamiltonianDatum> out;
    for (auto& v : kernel(A)) {
        auto [alpha, Y] = realize(v);
        if (top) Y = std::get<ScaledTop>(P.data()).f * Y;
        out.push_back({alpha, Y});
    }
    return out;
}

HamiltonianDatum random_hamiltonian(Sampler& rng, const std::vector<HamiltonianDatum>& basis, int max_terms) {
    if (basis.empty()) throw std::invalid_argument("no Hamiltonian data to combine");
    HamiltonianDatum r{basis[0].alpha * Rat(0), basis[0].X * Rat(0)};
    int terms = static_cast<int>(rng.uniform(1, max_terms));
    for (int t = 0; t < terms; ++t) {
        auto& b = basis[rng.uniform(0, static_cast<long>(basis.size()) - 1)];
        Rat c = rng.nonzero_rat(3);
        r.alpha += b.alpha * c;
        r.X += b.X * c;
    }
    return r;
}

Form ham_bracket(const HamiltonianDatum& a, const HamiltonianDatum& b) { return interior(a.X, d(b.alpha)); }

HamiltonianDatum bracket_datum(const HamiltonianDatum& a, const HamiltonianDatum& b) {
    return {ham_bracket(a, b), lie_bracket(a.X, b.X)};
}

Form jacobiator_residual(const HamiltonianDatum& a, const HamiltonianDatum& b, const HamiltonianDatum& c) {
    HamiltonianDatum bc = bracket_datum(b, c), ca = bracket_datum(c, a), ab = bracket_datum(a, b);
    return ham_bracket(a, bc) + ham_bracket(b, ca) + ham_bracket(c, ab) + d(interior(a.X, bc.alpha));
}

namespace {

// i_{X_{k_m}} ... i_{X_{k_1}} f for the ascending one-based list ks.
Form contract_chain(const std::vector<HamiltonianDatum>& a, const std::vector<int>& ks, Form f) {
    for (int k : ks) f = interior(a[k - 1].X, f);
    return f;
}

std::vector<int> range_except(int lo, int hi, std::initializer_list<int> skip) {
    std::vector<int> r;
    for (int k = lo; k <= hi; ++k)
        if (std::find(skip.begin(), skip.end(), k) == skip.end()) r.push_back(k);
    return r;
}

} // namespace

Form contracted_bracket(const std::vector<HamiltonianDatum>& a) {
    if (a.size() < 2) throw std::invalid_argument("need at least two Hamiltonian forms");
    return contract_chain(a, range_except(3, static_cast<int>(a.size()), {}), ham_bracket(a[0], a[1]));
}

Form contracted_bracket_residual(const std::vector<HamiltonianDatum>& a) {
    int n = static_cast<int>(a.size());
    if (n < 3) throw std::invalid_argument("the identity needs at least three Hamiltonian forms");
    auto dbl = [&](int i, int j, int k) { return ham_bracket(bracket_datum(a[i - 1], a[j - 1]), a[k - 1]); };
    Form rhs = Form(a[0].alpha.dim(), a[0].alpha.degree() + 3 - n);
    for (int i = 2; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) rhs += contract_chain(a, range_except(2, n, {i, j}), dbl(i, j, 1)) * Rat(sign_pow(i + j - 1));
    for (int j = 3; j <= n; ++j) rhs += contract_chain(a, range_except(3, n, {j}), dbl(1, j, 2)) * Rat(sign_pow(j));
    rhs += contract_chain(a, range_except(4, n, {}), dbl(1, 2, 3));
    return d(contracted_bracket(a)) - rhs * Rat(sign_pow(n + 1));
}

} // namespace diracspace
