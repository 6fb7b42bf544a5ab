#pragma once

#include "diracspace/presentation.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace diracspace {

// Element of a complex concentrated in degrees -top+1..0. Negative degrees carry a form of degree
// degree + top - 1. Degree 0 carries a (top-1)-form together with a vector field: the section X + form
// in the Getzler complex, or a Hamiltonian form with a chosen Hamiltonian field for observables.
struct GradedElem {
    int degree = 0;
    Form form;
    VField X;

    static GradedElem zero(int n, int top, int degree);
    static GradedElem of_form(const Form& a, int top);
    static GradedElem section(const SectionEp& e);
    static GradedElem hamiltonian(const HamiltonianDatum& h);

    bool is_zero() const { return form.is_zero() && X.is_zero(); }
    SectionEp as_section() const { return SectionEp(X, form); }
    GradedElem& operator+=(const GradedElem& o);
    friend GradedElem operator+(GradedElem a, const GradedElem& b) { return a += b; }
    friend GradedElem operator*(const Rat& c, GradedElem a) {
        a.form *= c;
        a.X *= c;
        return a;
    }
    friend bool operator==(const GradedElem& a, const GradedElem& b) {
        return a.degree == b.degree && a.form == b.form && a.X == b.X;
    }
    std::string str() const;
};

struct ArityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct MultibracketFamily {
    std::string name;
    int dim = 0;
    int top = 1;        // complex lives in degrees -top+1..0
    int max_arity = 1;  // l_n = 0 for n > max_arity
    std::function<GradedElem(const std::vector<GradedElem>&)> eval;

    // l_n with input and output degree checks.
    GradedElem bracket(const std::vector<GradedElem>& xs) const;
    GradedElem zero(int degree) const { return GradedElem::zero(dim, top, degree); }
};

using Permutation = std::vector<int>;

// (i, j)-unshuffles of 0..i+j-1, as the sequence sigma(0..i+j-1).
std::vector<Permutation> unshuffles(int i, int j);
// Sign of sigma acting on v_0 ... v_{n-1} in the odd representation; the result lists v_{sigma(k)}.
int koszul_sign(const Permutation& sigma, const std::vector<int>& degrees);

// sum_{i+j=n+1} sum_{sigma in Sh(i,n-i)} chi(sigma) (-1)^{i(j-1)} l_j(l_i(...), ...)
GradedElem check_relation(const MultibracketFamily& F, int n, const std::vector<GradedElem>& elems);

// epsilon(k) of the observables brackets.
int observables_sign(int k);
// Lie p-algebra of Hamiltonian forms; degree-0 entries must carry Hamiltonian fields.
MultibracketFamily observables_family(const Presentation& P);

struct GetzlerOptions {
    // Add i_{X1} i_{X2} d xi to the trinary bracket of a lower-degree form with two sections.
    bool xi_with_d_term = false;
    // Skip the closedness check of H (negative controls).
    bool allow_nonclosed = false;
};

// Trinary coefficient form -1/6 (1/2 (i_{X1} L_{X2} - i_{X2} L_{X1}) + i_{[X1,X2]} [+ i_{X1} i_{X2} d]) a.
Form getzler_trinary(const Form& a, const VField& X1, const VField& X2, bool with_d_term);
// Coefficient of the nested-contraction formula for odd arity n >= 3.
Rat getzler_coefficient(int n);
// Coefficient of the H-term for odd arity n >= 3.
Rat getzler_twist_coefficient(int n);
// Lie r-algebra on C^oo -> ... -> Omega^{r-2} -> Gamma(T + wedge^{r-1} T*), twisted by the closed (r+1)-form H.
MultibracketFamily getzler_family(int r, const Form& H, const GetzlerOptions& opts = {});

// Gamma(T + R) with [X+f, Y+g] = [X,Y] + X(g) - Y(f) + sigma(X,Y), as a family concentrated in degree 0.
MultibracketFamily twisted_e0_family(const Form& sigma);

// Lie 2-algebra morphism: phi0 on degree 0, phi1 on degree -1, phi2 on pairs of degree-0 elements.
// phi1 may be empty when the source has nothing in degree -1.
struct Lie2Morphism {
    std::function<GradedElem(const GradedElem&)> phi0, phi1;
    std::function<GradedElem(const GradedElem&, const GradedElem&)> phi2;
};

struct Lie2Sample {
    GradedElem x, y, z;
    std::optional<GradedElem> f;  // degree -1 element of the source
};

// Right side minus left side of each morphism equation.
struct Lie2Residuals {
    GradedElem chain_map, binary, binary_degree1, ternary;
    bool all_zero() const { return chain_map.is_zero() && binary.is_zero() && binary_degree1.is_zero() && ternary.is_zero(); }
};

Lie2Residuals lie2_residuals(const Lie2Morphism& M, const MultibracketFamily& src, const MultibracketFamily& dst,
                             const Lie2Sample& s);
Report check_lie2_morphism(const Lie2Morphism& M, const MultibracketFamily& src, const MultibracketFamily& dst,
                           const std::vector<Lie2Sample>& samples);

// (X,f) -> (X, df); ((X,f),(Y,g)) -> 1/2 (X(g) - Y(f)) + sigma(X,Y), into getzler_family(2, 0).
Lie2Morphism canonical_morphism_sigma(const Form& sigma, bool allow_nonclosed = false);

// f -> (X_f, -f) into twisted_e0_family(omega), for constant symplectic omega.
GradedElem prequantize(const Form& omega, const Poly& f);
// Checks P({f,g}) = [P f, P g]_omega and that the composite with canonical_morphism_sigma(omega) is the unary
// map f -> X_f - df with vanishing binary part.
Report p1_prequantization(const Form& omega, const std::vector<std::pair<Poly, Poly>>& pairs);

// phi(l_n(v_1..v_n)) = l'_n(phi v_1..phi v_n) for every tuple, n = tuple size.
Report strict_intertwining(const MultibracketFamily& F, const MultibracketFamily& G,
                           const std::function<GradedElem(const GradedElem&)>& phi,
                           const std::vector<std::vector<GradedElem>>& tuples);
// m_lambda(L): X + eta -> X + lambda eta applied to the presentation.
Presentation scale_presentation(const Presentation& P, const Rat& lambda);
// Observables of P and of m_lambda(P), intertwined by multiplication by lambda.
Report lambda_intertwining(const Presentation& P, const Rat& lambda, const std::vector<std::vector<GradedElem>>& tuples);
// Getzler families of H and H + dB, intertwined by e^{-B} in degree 0.
Report gauge_intertwining(int r, const Form& H, const Form& B, const std::vector<std::vector<GradedElem>>& tuples);

// Seeded random elements.
GradedElem random_getzler_elem(Sampler& rng, int n, int r, int degree);
GradedElem random_observable(Sampler& rng, int n, int p, int degree, const std::vector<HamiltonianDatum>& hamiltonians);
GradedElem random_e0_elem(Sampler& rng, int n);

} // namespace diracspace
