#pragma once

#include "diracspace/forms.hpp"

#include <cstdint>
#include <random>

namespace diracspace {

// Seeded sample source. Uses raw mt19937_64 output (standardized) so samples agree across platforms.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }
    // Uniform in [lo, hi].
    long uniform(long lo, long hi) { return lo + static_cast<long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool coin() { return gen_() & 1u; }

    Rat small_rat(long bound = 9) { return Rat(uniform(-bound, bound)); }
    Rat nonzero_rat(long bound = 9);
    // Sparse polynomial with up to max_terms terms of total degree <= max_degree.
    Poly poly(int n, int max_degree = 2, int max_terms = 3);
    Form form(int n, int degree, int max_degree = 2, int max_terms = 2, double density = 0.5);
    Form constant_form(int n, int degree);
    VField vfield(int n, int max_degree = 2, int max_terms = 2, double density = 0.6);
    VField constant_vfield(int n);
    MultiVec multivec(int n, int degree, int max_degree = 2, int max_terms = 2, double density = 0.5);

    // Up to two commuting shears x_k -> x_k + q(x_j) with quadratic q; pullbacks of constant forms
    // then have coefficients of degree <= 2.
    PolyAutomorphism shear(int n);
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[gen_() % i]);
    }

private:
    bool chance(double p) { return static_cast<double>(gen_() >> 11) * 0x1.0p-53 < p; }
    std::mt19937_64 gen_;
};

} // namespace diracspace
