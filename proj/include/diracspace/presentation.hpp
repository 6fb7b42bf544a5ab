#pragma once

#include "diracspace/courant.hpp"
#include "diracspace/linalg.hpp"
#include "diracspace/random.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace diracspace {

struct PresentationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// {X - i_X omega}
struct GraphForm {
    Form omega;
};

// {i_a pi + a}
struct GraphMultivector {
    MultiVec pi;
};

// {X + i_X omega + b : X in S, b in wedge^p S°} with S spanned by the frame rows listed in axes.
// Note the sign: this is the (S, omega) description of a Lagrangian subspace, not the graph sign.
struct Regular {
    std::vector<RatVec> frame;
    std::vector<int> axes;
    Form omega;
};

// {fX - i_X Omega} in E^{n-1}
struct ScaledTop {
    Poly f;
    Form Omega;
};

class Presentation {
public:
    using Data = std::variant<GraphForm, GraphMultivector, Regular, ScaledTop>;

    Presentation(Data data);

    int dim() const { return n_; }
    int p() const { return p_; }
    const Data& data() const { return data_; }
    std::string kind() const;

    // Generating family of the sections of L as a module over the polynomials.
    const std::vector<SectionEp>& generators() const { return gens_; }

    // Regular only: frame vectors spanning S, and the dual coframe.
    std::vector<VField> frame_fields(bool in_s) const;
    const std::vector<RatVec>& coframe() const { return coframe_; }

private:
    Data data_;
    int n_ = 0;
    int p_ = 0;
    std::vector<RatVec> coframe_;
    std::vector<SectionEp> gens_;
};

bool member(const Presentation& P, const SectionEp& e);

struct Report {
    std::string check;
    bool pass = true;
    std::vector<std::string> witnesses;
};

Report isotropy_report(const std::vector<SectionEp>& gens);
Report verify_isotropic(const Presentation& P);
Report verify_involutive(const Presentation& P);
// The Dorfman bracket of every ordered pair of generators lies in L.
Report dorfman_closure(const Presentation& P);

struct NotHamiltonian : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct HamiltonianDatum {
    Form alpha;
    VField X;
};

bool hamiltonian_verify(const Presentation& P, const Form& alpha, const VField& X);
HamiltonianDatum make_hamiltonian(const Presentation& P, const Form& alpha, const VField& X);
// Requires GraphForm or Regular with constant omega.
std::optional<VField> hamiltonian_solve(const Presentation& P, const Form& alpha);

// All Hamiltonian pairs with alpha of coefficient degree <= alpha_degree and X of coefficient
// degree <= field_degree, as a basis of the solution space of the membership equations.
std::vector<HamiltonianDatum> hamiltonian_basis(const Presentation& P, int alpha_degree, int field_degree);
HamiltonianDatum random_hamiltonian(Sampler& rng, const std::vector<HamiltonianDatum>& basis, int max_terms = 3);

// {a, b} = i_{X_a} d b
Form ham_bracket(const HamiltonianDatum& a, const HamiltonianDatum& b);
// ({a, b}, [X_a, X_b])
HamiltonianDatum bracket_datum(const HamiltonianDatum& a, const HamiltonianDatum& b);
// {a,{b,c}} + {b,{c,a}} + {c,{a,b}} + d(i_{X_a}{b,c}); zero on Hamiltonian triples.
Form jacobiator_residual(const HamiltonianDatum& a, const HamiltonianDatum& b, const HamiltonianDatum& c);

// i_{X_n} ... i_{X_3} {a_1, a_2}
Form contracted_bracket(const std::vector<HamiltonianDatum>& a);
// d of contracted_bracket minus its expansion through double brackets; zero for n >= 3.
Form contracted_bracket_residual(const std::vector<HamiltonianDatum>& a);

} // namespace diracspace
