#include "diracspace/linfty.hpp"

#include <algorithm>
#include <numeric>
#include <type_traits>

namespace diracspace {

GradedElem GradedElem::zero(int n, int top, int degree) { return {degree, Form(n, degree + top - 1), VField(n)}; }

GradedElem GradedElem::of_form(const Form& a, int top) { return {a.degree() - (top - 1), a, VField(a.dim())}; }

GradedElem GradedElem::section(const SectionEp& e) { return {0, e.alpha, e.X}; }

GradedElem GradedElem::hamiltonian(const HamiltonianDatum& h) { return {0, h.alpha, h.X}; }

GradedElem& GradedElem::operator+=(const GradedElem& o) {
    if (degree != o.degree) throw DegreeError("adding elements of different degrees");
    form += o.form;
    X += o.X;
    return *this;
}

std::string GradedElem::str() const {
    if (degree == 0 && !X.is_zero()) return as_section().str();
    return form.str();
}

GradedElem MultibracketFamily::bracket(const std::vector<GradedElem>& xs) const {
    int n = static_cast<int>(xs.size());
    if (n == 0) throw ArityError("brackets take at least one argument");
    int out = 2 - n;
    for (auto& x : xs) {
        if (x.degree > 0 || x.degree < 1 - top) throw DegreeError("element outside the complex");
        if (x.form.degree() != x.degree + top - 1 || x.form.dim() != dim) throw DegreeError("payload does not match degree");
        out += x.degree;
    }
    if (n > max_arity || out < 1 - top || out > 0) return zero(out);
    GradedElem r = eval(xs);
    if (r.is_zero()) return zero(out);
    if (r.degree != out || r.form.degree() != out + top - 1)
        throw std::logic_error(name + ": l_" + std::to_string(n) + " produced degree " + std::to_string(r.degree) +
                               ", expected " + std::to_string(out));
    return r;
}

std::vector<Permutation> unshuffles(int i, int j) {
    if (i < 0 || j < 0) throw std::invalid_argument("unshuffle block sizes must be non-negative");
    int n = i + j;
    std::vector<Permutation> out;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + i, true);
    // prev_permutation on a sorted-descending selection mask enumerates subsets in lex order
    do {
        Permutation s;
        for (int k = 0; k < n; ++k)
            if (pick[k]) s.push_back(k);
        for (int k = 0; k < n; ++k)
            if (!pick[k]) s.push_back(k);
        out.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

int koszul_sign(const Permutation& sigma, const std::vector<int>& degrees) {
    if (sigma.size() != degrees.size()) throw std::invalid_argument("permutation and degree list differ in length");
    int s = 1;
    for (std::size_t k = 0; k < sigma.size(); ++k)
        for (std::size_t l = k + 1; l < sigma.size(); ++l)
            if (sigma[k] > sigma[l]) {
                int a = degrees[sigma[k]], b = degrees[sigma[l]];
                s *= -sign_pow(a * b);
            }
    return s;
}

GradedElem check_relation(const MultibracketFamily& F, int n, const std::vector<GradedElem>& elems) {
    if (static_cast<int>(elems.size()) != n) throw std::invalid_argument("relation arity and element count differ");
    if (n > F.max_arity + 1) throw ArityError("relation arity exceeds the declared maximum");
    std::vector<int> degs;
    int total = 0;
    for (auto& e : elems) {
        degs.push_back(e.degree);
        total += e.degree;
    }
    GradedElem sum = F.zero(total + 3 - n);
    for (int i = 1; i <= n; ++i) {
        int j = n + 1 - i;
        for (auto& s : unshuffles(i, n - i)) {
            std::vector<GradedElem> inner, outer;
            for (int k = 0; k < i; ++k) inner.push_back(elems[s[k]]);
            GradedElem li = F.bracket(inner);
            if (li.is_zero()) continue;
            outer.push_back(li);
            for (int k = i; k < n; ++k) outer.push_back(elems[s[k]]);
            GradedElem lj = F.bracket(outer);
            if (lj.is_zero()) continue;
            sum += Rat(koszul_sign(s, degs) * sign_pow(i * (j - 1))) * lj;
        }
    }
    return sum;
}

int observables_sign(int k) { return k % 2 == 0 ? sign_pow(k / 2 + 1) : sign_pow((k - 1) / 2); }

MultibracketFamily observables_family(const Presentation& P) {
    if (!verify_isotropic(P).pass || !verify_involutive(P).pass)
        throw PresentationError("observables need an isotropic involutive presentation");
    int p = P.p(), n = P.dim();
    MultibracketFamily F;
    F.name = "observables";
    F.dim = n;
    F.top = p;
    F.max_arity = p + 1;
    F.eval = [p, n](const std::vector<GradedElem>& xs) -> GradedElem {
        std::size_t k = xs.size();
        if (k == 1) {
            if (xs[0].degree == 0) return GradedElem::zero(n, p, 1);
            return GradedElem::of_form(d(xs[0].form), p);
        }
        for (auto& x : xs)
            if (x.degree < 0) return GradedElem::zero(n, p, 2 - static_cast<int>(k));
        HamiltonianDatum a{xs[0].form, xs[0].X}, b{xs[1].form, xs[1].X};
        if (k == 2) return GradedElem::hamiltonian(bracket_datum(a, b));
        Form f = ham_bracket(a, b);
        for (std::size_t i = 2; i < k; ++i) f = interior(xs[i].X, f);
        return GradedElem::of_form(f * Rat(observables_sign(static_cast<int>(k))), p);
    };
    return F;
}

Form getzler_trinary(const Form& a, const VField& X1, const VField& X2, bool with_d_term) {
    Form r = (interior(X1, lie_derivative(X2, a)) - interior(X2, lie_derivative(X1, a))) * Rat(1, 2);
    r += interior(lie_bracket(X1, X2), a);
    if (with_d_term) r += interior(X1, interior(X2, d(a)));
    return r * Rat(-1, 6);
}

Rat getzler_coefficient(int n) {
    return Rat(sign_pow((n + 1) / 2) * 12) * bernoulli(n - 1) / Rat((n - 1) * (n - 2));
}

Rat getzler_twist_coefficient(int n) { return Rat(sign_pow((n - 1) / 2) * n) * bernoulli(n - 1); }

namespace {

// K_n sum_{i<j} (-1)^{i+j+1} i_{Y_{m}} ... ^j ^i ... i_{Y_1} T(a; Y_i, Y_j), one-based i, j over ys.
Form nested_trinary(int n, const Form& a, const std::vector<VField>& ys, bool with_d_term) {
    int m = static_cast<int>(ys.size());
    Form r(a.dim(), a.degree() + 2 - n);
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
            Form t = getzler_trinary(a, ys[i - 1], ys[j - 1], with_d_term);
            for (int k = 1; k <= m; ++k)
                if (k != i && k != j) t = interior(ys[k - 1], t);
            r += t * Rat(sign_pow(i + j + 1));
        }
    return r * getzler_coefficient(n);
}

} // namespace

MultibracketFamily getzler_family(int r, const Form& H, const GetzlerOptions& opts) {
    if (r < 2) throw std::invalid_argument("the Getzler complex needs r >= 2");
    if (H.degree() != r + 1) throw DegreeError("H must have degree r + 1");
    if (!opts.allow_nonclosed && !d(H).is_zero()) throw std::invalid_argument("H must be closed");
    int n = H.dim();
    MultibracketFamily F;
    F.name = "getzler";
    F.dim = n;
    F.top = r;
    F.max_arity = r + 1;
    F.eval = [r, n, H, opts](const std::vector<GradedElem>& xs) -> GradedElem {
        int m = static_cast<int>(xs.size());
        // forms first, keeping relative order
        Permutation order(m);
        std::iota(order.begin(), order.end(), 0);
        std::stable_partition(order.begin(), order.end(), [&](int k) { return xs[k].degree < 0; });
        std::vector<int> degs;
        for (auto& x : xs) degs.push_back(x.degree);
        Rat sign(koszul_sign(order, degs));
        std::vector<Form> forms;
        std::vector<VField> X;
        std::vector<Form> alpha;
        for (int k : order) {
            if (xs[k].degree < 0)
                forms.push_back(xs[k].form);
            else {
                X.push_back(xs[k].X);
                alpha.push_back(xs[k].form);
            }
        }
        auto wrap = [&](const Form& f) { return sign * GradedElem::of_form(f, r); };
        int out = 2 - m;
        for (auto& x : xs) out += x.degree;
        GradedElem zero = GradedElem::zero(n, r, out);
        if (m == 1) {
            if (!forms.empty()) return GradedElem::of_form(d(forms[0]), r);
            return zero;
        }
        if (forms.size() >= 2) return zero;
        if (m == 2) {
            if (forms.empty()) {
                SectionEp e1(X[0], alpha[0]), e2(X[1], alpha[1]);
                return GradedElem::section(courant(e1, e2, H));
            }
            return wrap(lie_derivative(X[0], forms[0]) * Rat(-1, 2));
        }
        if (m % 2 == 0) return zero;
        if (forms.size() == 1) return wrap(nested_trinary(m, forms[0], X, opts.xi_with_d_term));
        Form f = Form(n, r - 1 + out);
        for (int i = 0; i < m; ++i) {
            std::vector<VField> others;
            for (int k = 0; k < m; ++k)
                if (k != i) others.push_back(X[k]);
            f += nested_trinary(m, alpha[i], others, true) * Rat(sign_pow(i));
        }
        Form h = H;
        for (auto& x : X) h = interior(x, h);
        f += h * getzler_twist_coefficient(m);
        return wrap(f);
    };
    return F;
}

MultibracketFamily twisted_e0_family(const Form& sigma) {
    if (sigma.degree() != 2) throw DegreeError("sigma must be a 2-form");
    int n = sigma.dim();
    MultibracketFamily F;
    F.name = "twisted-e0";
    F.dim = n;
    F.top = 1;
    F.max_arity = 2;
    F.eval = [n, sigma](const std::vector<GradedElem>& xs) -> GradedElem {
        if (xs.size() != 2) return GradedElem::zero(n, 1, 2 - static_cast<int>(xs.size()));
        const auto& a = xs[0];
        const auto& b = xs[1];
        Form f = interior(a.X, d(b.form)) - interior(b.X, d(a.form)) + interior(b.X, interior(a.X, sigma));
        return {0, f, lie_bracket(a.X, b.X)};
    };
    return F;
}

namespace {

std::string residual_line(const std::string& label, const GradedElem& r) { return label + ": " + r.str(); }

} // namespace

Lie2Residuals lie2_residuals(const Lie2Morphism& M, const MultibracketFamily& src, const MultibracketFamily& dst,
                             const Lie2Sample& s) {
    if (src.max_arity > 3 || dst.max_arity > 3) throw ArityError("Lie 2-algebra morphisms need max arity <= 3");
    auto l1 = [](const MultibracketFamily& F, const GradedElem& a) { return F.bracket({a}); };
    auto l2 = [](const MultibracketFamily& F, const GradedElem& a, const GradedElem& b) { return F.bracket({a, b}); };
    Lie2Residuals r{dst.zero(0), dst.zero(0), dst.zero(-1), dst.zero(-1)};
    if (s.f && src.top >= 2) {
        if (!M.phi1) throw std::invalid_argument("phi1 missing for a source with degree -1 elements");
        const GradedElem& f = *s.f;
        GradedElem df = l1(src, f);
        r.chain_map = M.phi0(df) + Rat(-1) * l1(dst, M.phi1(f));
        r.binary_degree1 = M.phi1(l2(src, f, s.y)) + Rat(-1) * l2(dst, M.phi1(f), M.phi0(s.y)) + Rat(-1) * M.phi2(df, s.y);
    }
    const GradedElem &x = s.x, &y = s.y, &z = s.z;
    GradedElem px = M.phi0(x), py = M.phi0(y), pz = M.phi0(z);
    r.binary = M.phi0(l2(src, x, y)) + Rat(-1) * l2(dst, px, py) + Rat(-1) * l1(dst, M.phi2(x, y));
    GradedElem rhs = M.phi2(x, l2(src, y, z)) + Rat(-1) * M.phi2(y, l2(src, x, z)) + M.phi2(z, l2(src, x, y));
    rhs += l2(dst, px, M.phi2(y, z));
    rhs += Rat(-1) * l2(dst, py, M.phi2(x, z));
    rhs += l2(dst, pz, M.phi2(x, y));
    GradedElem lhs = dst.zero(-1);
    if (src.max_arity >= 3 && src.top >= 2) {
        if (!M.phi1) throw std::invalid_argument("phi1 missing for a source with a trinary bracket");
        lhs += M.phi1(src.bracket({x, y, z}));
    }
    lhs += Rat(-1) * dst.bracket({px, py, pz});
    r.ternary = rhs + Rat(-1) * lhs;
    return r;
}

Report check_lie2_morphism(const Lie2Morphism& M, const MultibracketFamily& src, const MultibracketFamily& dst,
                           const std::vector<Lie2Sample>& samples) {
    Report rep{"lie2-morphism", true, {}};
    for (std::size_t k = 0; k < samples.size(); ++k) {
        Lie2Residuals r = lie2_residuals(M, src, dst, samples[k]);
        std::string tag = "sample " + std::to_string(k) + " ";
        if (!r.chain_map.is_zero()) rep.witnesses.push_back(residual_line(tag + "chain_map", r.chain_map));
        if (!r.binary.is_zero()) rep.witnesses.push_back(residual_line(tag + "binary", r.binary));
        if (!r.binary_degree1.is_zero()) rep.witnesses.push_back(residual_line(tag + "binary_degree1", r.binary_degree1));
        if (!r.ternary.is_zero()) rep.witnesses.push_back(residual_line(tag + "ternary", r.ternary));
    }
    rep.pass = rep.witnesses.empty();
    return rep;
}

Lie2Morphism canonical_morphism_sigma(const Form& sigma, bool allow_nonclosed) {
    if (sigma.degree() != 2) throw DegreeError("sigma must be a 2-form");
    if (!allow_nonclosed && !d(sigma).is_zero()) throw std::invalid_argument("sigma must be closed");
    int n = sigma.dim();
    Lie2Morphism M;
    M.phi0 = [](const GradedElem& a) { return GradedElem{0, d(a.form), a.X}; };
    M.phi2 = [n, sigma](const GradedElem& a, const GradedElem& b) {
        Form f = (interior(a.X, d(b.form)) - interior(b.X, d(a.form))) * Rat(1, 2);
        f += interior(b.X, interior(a.X, sigma));
        return GradedElem{-1, f, VField(n)};
    };
    return M;
}

namespace {

void require_symplectic(const Form& omega) {
    if (omega.degree() != 2) throw PresentationError("omega must be a 2-form");
    Presentation P(GraphForm{omega});
    for (int i = 0; i < omega.dim(); ++i)
        if (!hamiltonian_solve(P, Form::scalar(Poly::variable(omega.dim(), i))))
            throw PresentationError("omega is degenerate");
}

} // namespace

GradedElem prequantize(const Form& omega, const Poly& f) {
    require_symplectic(omega);
    auto X = hamiltonian_solve(Presentation(GraphForm{omega}), Form::scalar(f));
    if (!X) throw PresentationError("omega is degenerate");
    return {0, Form::scalar(-f), *X};
}

Report p1_prequantization(const Form& omega, const std::vector<std::pair<Poly, Poly>>& pairs) {
    require_symplectic(omega);
    Presentation P(GraphForm{omega});
    MultibracketFamily obs = observables_family(P);
    MultibracketFamily e0 = twisted_e0_family(omega);
    Lie2Morphism D = canonical_morphism_sigma(omega);
    auto ham = [&](const Poly& f) {
        return GradedElem::hamiltonian(make_hamiltonian(P, Form::scalar(f), *hamiltonian_solve(P, Form::scalar(f))));
    };
    auto pre = [&](const GradedElem& a) { return GradedElem{0, -a.form, a.X}; };
    Report rep{"p1-prequantization", true, {}};
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        std::string tag = "pair " + std::to_string(k) + " ";
        GradedElem f = ham(pairs[k].first), g = ham(pairs[k].second);
        GradedElem fg = obs.bracket({f, g});
        GradedElem lhs = pre(fg);
        GradedElem rhs = e0.bracket({pre(f), pre(g)});
        if (!(lhs == rhs)) rep.witnesses.push_back(tag + "P{f,g} - [Pf,Pg]: " + (lhs + Rat(-1) * rhs).str());
        GradedElem unary = D.phi0(pre(f));
        GradedElem expect{0, -d(f.form), f.X};
        if (!(unary == expect)) rep.witnesses.push_back(tag + "composite unary: " + unary.str());
        GradedElem binary = D.phi2(pre(f), pre(g));
        if (!binary.is_zero()) rep.witnesses.push_back(tag + "composite binary: " + binary.str());
    }
    rep.pass = rep.witnesses.empty();
    return rep;
}

Report strict_intertwining(const MultibracketFamily& F, const MultibracketFamily& G,
                           const std::function<GradedElem(const GradedElem&)>& phi,
                           const std::vector<std::vector<GradedElem>>& tuples) {
    Report rep{"strict-intertwining", true, {}};
    for (std::size_t k = 0; k < tuples.size(); ++k) {
        const auto& xs = tuples[k];
        std::vector<GradedElem> ys;
        for (auto& x : xs) ys.push_back(phi(x));
        GradedElem lhs = phi(F.bracket(xs));
        GradedElem rhs = G.bracket(ys);
        if (!(lhs == rhs))
            rep.witnesses.push_back("tuple " + std::to_string(k) + " arity " + std::to_string(xs.size()) + ": " +
                                    (lhs + Rat(-1) * rhs).str());
    }
    rep.pass = rep.witnesses.empty();
    return rep;
}

Presentation scale_presentation(const Presentation& P, const Rat& lambda) {
    if (lambda == 0) throw std::invalid_argument("lambda must be nonzero");
    return std::visit(
        [&](const auto& D) -> Presentation {
            using T = std::decay_t<decltype(D)>;
            if constexpr (std::is_same_v<T, GraphForm>)
                return Presentation(GraphForm{D.omega * lambda});
            else if constexpr (std::is_same_v<T, GraphMultivector>)
                return Presentation(GraphMultivector{D.pi * (Rat(1) / lambda)});
            else if constexpr (std::is_same_v<T, Regular>)
                return Presentation(Regular{D.frame, D.axes, D.omega * lambda});
            else
                return Presentation(ScaledTop{D.f, D.Omega * lambda});
        },
        P.data());
}

Report lambda_intertwining(const Presentation& P, const Rat& lambda, const std::vector<std::vector<GradedElem>>& tuples) {
    Presentation Q = scale_presentation(P, lambda);
    auto phi = [lambda](const GradedElem& a) { return GradedElem{a.degree, a.form * lambda, a.X}; };
    Report rep = strict_intertwining(observables_family(P), observables_family(Q), phi, tuples);
    rep.check = "lambda-intertwining";
    for (std::size_t k = 0; k < tuples.size(); ++k)
        for (auto& a : tuples[k])
            if (a.degree == 0 && !hamiltonian_verify(Q, a.form * lambda, a.X))
                rep.witnesses.push_back("tuple " + std::to_string(k) + ": scaled element not Hamiltonian");
    rep.pass = rep.witnesses.empty();
    return rep;
}

Report gauge_intertwining(int r, const Form& H, const Form& B, const std::vector<std::vector<GradedElem>>& tuples) {
    if (B.degree() != r) throw DegreeError("B must have degree r");
    auto phi = [B](const GradedElem& a) {
        if (a.degree != 0) return a;
        return GradedElem::section(gauge(a.as_section(), B, -1));
    };
    Report rep = strict_intertwining(getzler_family(r, H), getzler_family(r, H + d(B)), phi, tuples);
    rep.check = "gauge-intertwining";
    return rep;
}

namespace {

Form nonzero_form(Sampler& rng, int n, int degree) {
    for (int t = 0; t < 16; ++t) {
        Form f = rng.form(n, degree);
        if (!f.is_zero() || degree < 0 || degree > n) return f;
    }
    return Form::basis(n, lex_masks(n, degree).front());
}

} // namespace

GradedElem random_getzler_elem(Sampler& rng, int n, int r, int degree) {
    if (degree == 0) {
        SectionEp e(rng.vfield(n), rng.form(n, r - 1));
        while (e.X.is_zero() || e.alpha.is_zero()) e = SectionEp(rng.vfield(n), rng.form(n, r - 1));
        return GradedElem::section(e);
    }
    return GradedElem::of_form(nonzero_form(rng, n, degree + r - 1), r);
}

GradedElem random_observable(Sampler& rng, int n, int p, int degree, const std::vector<HamiltonianDatum>& hamiltonians) {
    if (degree == 0) return GradedElem::hamiltonian(random_hamiltonian(rng, hamiltonians));
    return GradedElem::of_form(nonzero_form(rng, n, degree + p - 1), p);
}

GradedElem random_e0_elem(Sampler& rng, int n) {
    return {0, Form::scalar(rng.poly(n)), rng.vfield(n)};
}

} // namespace diracspace
