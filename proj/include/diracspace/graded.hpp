#pragma once

#include "diracspace/linfty.hpp"

#include <compare>
#include <map>
#include <string>
#include <variant>

namespace diracspace {

// Monomial in the generators v_i (degree 1), p_i (degree r-1), P_i (degree r); x-dependence lives in the
// coefficient. Odd generators are ordered v, then p, then P, each block by index.
struct GKey {
    Mask v = 0;
    Exponents p{};
    Exponents P{};
    auto operator<=>(const GKey&) const = default;
};

class GPoly {
public:
    using Terms = std::map<GKey, Poly>;

    GPoly() = default;
    GPoly(int r, int n);
    static GPoly scalar(int r, const Poly& f);
    static GPoly x(int r, int n, int i);
    static GPoly v(int r, int n, int i);
    static GPoly p(int r, int n, int i);
    static GPoly P(int r, int n, int i);

    int r() const { return r_; }
    int dim() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int key_degree(const GKey& k) const;
    // Degree of a nonzero homogeneous element; throws otherwise.
    int degree() const;
    bool p_odd() const { return (r_ - 1) % 2 != 0; }
    bool P_odd() const { return r_ % 2 != 0; }

    void add(const GKey& k, const Poly& c);
    GPoly& operator+=(const GPoly& o);
    GPoly& operator-=(const GPoly& o);
    GPoly& operator*=(const Rat& c);
    friend GPoly operator+(GPoly a, const GPoly& b) { return a += b; }
    friend GPoly operator-(GPoly a, const GPoly& b) { return a -= b; }
    friend GPoly operator*(GPoly a, const Rat& c) { return a *= c; }
    friend GPoly operator*(const Rat& c, GPoly a) { return a *= c; }
    friend bool operator==(const GPoly& a, const GPoly& b) {
        return a.r_ == b.r_ && a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    void check(const GPoly& o) const;
    int r_ = 2;
    int n_ = 0;
    Terms terms_;
};

enum class Gen { x, v, p, P };

GPoly gmul(const GPoly& a, const GPoly& b);
inline GPoly operator*(const GPoly& a, const GPoly& b) { return gmul(a, b); }
// Left (from the front) or right (from the back) derivative by one generator.
GPoly gpartial(const GPoly& a, Gen g, int i, bool right);
// Degree -r bracket with {P_i, x_i} = 1 and {p_i, v_i} = 1.
GPoly gbracket(const GPoly& a, const GPoly& b);

// sum_i v_i P_i
GPoly euler_S(int r, int n);

GPoly encode(const Form& a, int r);
GPoly encode(const VField& X, int r);
GPoly encode(const SectionEp& e, int r);
// Form of the given degree; throws if g has other components.
Form decode_form(const GPoly& g, int degree);
// Degree below r-1 gives a Form, degree r-1 a section.
std::variant<Form, SectionEp> decode(const GPoly& g, int degree);

// Facts of the derived-bracket description: 'a' pairing, 'b' {S, xi} = d xi, 'c' Dorfman, 'd' nested vanishing,
// 'H' nested brackets of H. Each selected fact is checked on `trials` random inputs.
Report derived_check(int r, const Form& H, const std::string& facts, Sampler& rng, int trials);

// (-1)^{sum_i x_i (n - i)}, i = 1..n-1
int decalage_sign(const std::vector<int>& degrees);
// Graded symmetric bracket c_{n-1} sum_sigma eps(sigma) {..{{delta_0 a_s1, a_s2}, a_s3}.., a_sn},
// delta_0 = {S - H, .} on sections and zero on lower forms; n = 1 gives {S - H, a} below the top.
GPoly getzler_symmetric_bracket(int r, const Form& H, const std::vector<GradedElem>& elems);
// The symmetric bracket converted to the skew convention of check_relation and decoded. Arity at most 5.
GradedElem oracle_multibracket(int r, const Form& H, const std::vector<GradedElem>& elems);

} // namespace diracspace
