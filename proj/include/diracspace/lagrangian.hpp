#pragma once

#include "diracspace/courant.hpp"
#include "diracspace/linalg.hpp"
#include "diracspace/random.hpp"

#include <map>
#include <utility>

namespace diracspace {

// Constant-coefficient vectors of wedge^k T or wedge^k T* in lexicographic tuple coordinates.
RatVec form_coords(const Form& a);
RatVec multivec_coords(const MultiVec& Y);
Form coords_form(int n, int k, const RatVec& v);
MultiVec coords_multivec(int n, int k, const RatVec& v);
VField coords_vfield(const RatVec& v);

// Subspace of wedge^a T + wedge^b T* (a = 1, b = p for E^p; a = r, b = p+1-r for the tier-r bundle).
class LinSubspace {
public:
    LinSubspace() = default;
    LinSubspace(int n, int vdeg, int fdeg, const std::vector<RatVec>& spanning);
    static LinSubspace ep(int n, int p, const std::vector<SectionEp>& spanning);

    int n() const { return n_; }
    int vdeg() const { return vdeg_; }
    int fdeg() const { return fdeg_; }
    int order() const { return vdeg_ + fdeg_ - 1; }
    int dim() const { return static_cast<int>(basis_.size()); }
    int ambient_dim() const;
    int vpart_dim() const;
    const std::vector<RatVec>& basis() const { return basis_; }

    RatVec element(const MultiVec& Y, const Form& eta) const;
    std::pair<MultiVec, Form> split(const RatVec& v) const;
    SectionPr section(const RatVec& v) const;
    bool contains(const RatVec& v) const;
    bool contains(const LinSubspace& o) const;

    friend bool operator==(const LinSubspace& a, const LinSubspace& b) {
        return a.n_ == b.n_ && a.vdeg_ == b.vdeg_ && a.fdeg_ == b.fdeg_ && a.basis_ == b.basis_;
    }

private:
    int n_ = 0, vdeg_ = 1, fdeg_ = 1;
    std::vector<RatVec> basis_;
};

struct LagrangianPair {
    int n = 0;
    int p = 1;
    std::vector<RatVec> S;                        // canonical basis of S inside Q^n
    std::map<std::pair<int, int>, RatVec> Omega;  // (i<j) -> Omega(s_i, s_j) in wedge^{p-1} T*
    friend bool operator==(const LagrangianPair&, const LagrangianPair&) = default;
};

struct Classification {
    bool isotropic = false;
    bool lagrangian = false;            // perp(L) == L
    bool lagrangian_by_annihilator = false;   // isotropic, L cap wedge^p T* = wedge^p S-ann, dimension constraint
};

struct NambuDiracCheck {
    bool iso_weak = false;
    bool maximal = false;
};

struct NotLagrangian : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// {u in tier-r bundle : <<u, V>> = 0}; for V in E^p and r = 1 this is the E^p perp.
LinSubspace perp(const LinSubspace& V, int r);
LinSubspace perp(const LinSubspace& L);

// S = pr_T(V) for E^p subspaces, as a canonical basis of Q^n.
std::vector<RatVec> projection_T(const LinSubspace& L);
// Annihilator of a subspace of Q^n, as covectors.
std::vector<RatVec> annihilator(int n, const std::vector<RatVec>& S);
// Span of k-fold wedges of the given covectors (resp. vectors), in wedge^k coordinates.
std::vector<RatVec> wedge_power_forms(int n, const std::vector<RatVec>& covectors, int k);
std::vector<RatVec> wedge_power_vectors(int n, const std::vector<RatVec>& vectors, int k);
// L cap (0 + wedge^p T*), as vectors in wedge^p T* coordinates.
std::vector<RatVec> form_part_intersection(const LinSubspace& L);
bool dimension_constraint(int n, int p, int dim_s);

Classification classify(const LinSubspace& L);
LagrangianPair to_pair(const LinSubspace& L);
LinSubspace from_pair(const LagrangianPair& pair);
// beta[i] = beta(s_i) in wedge^p T*; C a basis of a complement of S. Returns omega with i_{s_i} omega = beta[i].
Form extend_to_form(int n, const std::vector<RatVec>& S, const std::vector<Form>& beta, const std::vector<RatVec>& C);
// Standard-dot-product orthogonal complement.
std::vector<RatVec> orthogonal_complement(int n, const std::vector<RatVec>& S);
// An extension omega of the pair of a Lagrangian L, with i_{s_i} omega = alpha_i for chosen X+alpha in L.
Form describing_form(const LinSubspace& L);
// {X + i_X omega + a : X in S, a in wedge^p S-ann}
LinSubspace graph_over_subspace(int n, const std::vector<RatVec>& S, const Form& omega);
// Tier-r space: computed from the S ^ wedge^{r-1} T frame and as the brute-force perp; both must agree.
LinSubspace multidirac_tier(const LinSubspace& L, int r);
LinSubspace multidirac_tier_formula(const LinSubspace& L, int r);
NambuDiracCheck nambu_dirac_check(const LinSubspace& L);

// Random k-dimensional subspace of Q^n with small integer spanning vectors.
std::vector<RatVec> random_subspace_of_qn(Sampler& rng, int n, int k);
// Random Lagrangian via a random admissible S and a random constant (p+1)-form.
LinSubspace random_lagrangian(Sampler& rng, int n, int p);
// Random span of up to max_dim sparse small-integer vectors.
LinSubspace random_subspace(Sampler& rng, int n, int vdeg, int fdeg, int max_dim);

} // namespace diracspace
