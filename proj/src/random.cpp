#include "diracspace/random.hpp"

namespace diracspace {

Rat Sampler::nonzero_rat(long bound) {
    long v = uniform(1, bound);
    return coin() ? Rat(v) : Rat(-v);
}

Poly Sampler::poly(int n, int max_degree, int max_terms) {
    Poly p(n);
    int terms = static_cast<int>(uniform(1, max_terms));
    for (int t = 0; t < terms; ++t) {
        int deg = static_cast<int>(uniform(0, max_degree));
        Exponents e{};
        for (int k = 0; k < deg && n > 0; ++k) e[uniform(0, n - 1)] += 1;
        p.add_term(e, small_rat());
    }
    return p;
}

Form Sampler::form(int n, int degree, int max_degree, int max_terms, double density) {
    Form f(n, degree);
    for (Mask m : lex_masks(n, degree))
        if (chance(density)) f.add(m, poly(n, max_degree, max_terms));
    return f;
}

Form Sampler::constant_form(int n, int degree) {
    Form f(n, degree);
    for (Mask m : lex_masks(n, degree)) f.add(m, Poly(n, small_rat()));
    return f;
}

VField Sampler::vfield(int n, int max_degree, int max_terms, double density) {
    VField X(n);
    for (int i = 0; i < n; ++i)
        if (chance(density)) X[i] = poly(n, max_degree, max_terms);
    return X;
}

VField Sampler::constant_vfield(int n) {
    VField X(n);
    for (int i = 0; i < n; ++i) X[i] = Poly(n, small_rat());
    return X;
}

MultiVec Sampler::multivec(int n, int degree, int max_degree, int max_terms, double density) {
    MultiVec Y(n, degree);
    for (Mask m : lex_masks(n, degree))
        if (chance(density)) Y.add(m, poly(n, max_degree, max_terms));
    return Y;
}

PolyAutomorphism Sampler::shear(int n) {
    PolyAutomorphism m;
    for (int i = 0; i < n; ++i) {
        m.map.push_back(Poly::variable(n, i));
        m.inverse.push_back(Poly::variable(n, i));
    }
    if (n < 2) return m;
    int j = static_cast<int>(uniform(0, n - 1));
    std::vector<int> targets;
    for (int k = 0; k < n; ++k)
        if (k != j) targets.push_back(k);
    shuffle(targets);
    int count = n >= 3 ? 2 : 1;
    for (int t = 0; t < count; ++t) {
        Poly xj = Poly::variable(n, j);
        Poly q = xj * xj * nonzero_rat(3) + xj * small_rat(3);
        m.map[targets[t]] += q;
        m.inverse[targets[t]] -= q;
    }
    return m;
}

} // namespace diracspace
