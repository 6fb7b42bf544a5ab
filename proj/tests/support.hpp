#pragma once

#include "diracspace/forms.hpp"
#include "diracspace/presentation.hpp"
#include "diracspace/random.hpp"

namespace testsupport {

using namespace diracspace;

inline Poly x(int n, int i) { return Poly::variable(n, i - 1); }
inline Poly c(int n, long v) { return Poly(n, Rat(v)); }
inline Form dx(int n, int i) { return Form::dx(n, i - 1); }
inline VField D(int n, int i) { return VField::basis(n, i - 1); }
inline Form fn(const Poly& f) { return Form::scalar(f); }

template <class... I>
Form dxs(int n, I... idx) {
    Form r = Form::scalar(Poly(n, 1));
    ((r = wedge(r, Form::dx(n, idx - 1))), ...);
    return r;
}

template <class... I>
MultiVec Ds(int n, I... idx) {
    MultiVec r = MultiVec::basis(n, 0);
    ((r = wedge(r, MultiVec(VField::basis(n, idx - 1)))), ...);
    return r;
}

inline std::vector<RatVec> identity_frame(int n) {
    std::vector<RatVec> f(n, RatVec(n));
    for (int i = 0; i < n; ++i) f[i][i] = 1;
    return f;
}

inline Form vol(int n) { return Form::basis(n, (Mask(1) << n) - 1); }

// Random L-section: polynomial combination of generators.
inline SectionEp random_member(Sampler& rng, const Presentation& P) {
    SectionEp e = SectionEp::zero(P.dim(), P.p());
    for (auto& g : P.generators())
        if (rng.coin()) e += rng.poly(P.dim(), 1, 2) * g;
    return e;
}

inline std::vector<HamiltonianDatum> random_tuple(Sampler& rng, const std::vector<HamiltonianDatum>& basis, int k) {
    std::vector<HamiltonianDatum> out;
    for (int i = 0; i < k; ++i) out.push_back(random_hamiltonian(rng, basis));
    return out;
}

// Hamiltonian data of a constant form pulled back along a shear, together with the pulled-back presentation.
inline std::pair<Presentation, std::vector<HamiltonianDatum>> pulled_back(Sampler& rng, const Form& omega0,
                                                                   const std::vector<HamiltonianDatum>& basis0) {
    PolyAutomorphism s = rng.shear(omega0.dim());
    Presentation P(GraphForm{pullback(omega0, s.map)});
    std::vector<HamiltonianDatum> out;
    for (auto& h : basis0) out.push_back({pullback(h.alpha, s.map), pullback(h.X, s.map, s.inverse)});
    return {P, out};
}

} // namespace testsupport
