#pragma once

#include "diracspace/poly.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace diracspace {

// Bit i set <=> axis i (zero-based) occurs in the increasing index tuple.
using Mask = std::uint32_t;

int popcount(Mask m);
std::vector<int> mask_axes(Mask m);
// Increasing tuples of length k from {0..n-1}, in lexicographic tuple order.
const std::vector<Mask>& lex_masks(int n, int k);
// Sign of dx_a ^ dx_b = sign * dx_{a|b}; 0 if a, b overlap.
int wedge_sign(Mask a, Mask b);
// Sign of i_{d_I} dx_J with nested contraction (smallest index of I first); 0 unless I is a subset of J.
// The same number is the sign of i_{dx_I} d_J for form-into-multivector contraction.
int contract_sign(Mask I, Mask J);

class VField;

// Differential form of fixed degree; degree outside [0, n] only admits the zero value.
class Form {
public:
    using Comps = std::map<Mask, Poly>;

    Form() = default;
    Form(int n, int degree);
    static Form scalar(const Poly& f);
    static Form basis(int n, Mask m, const Rat& c = 1);
    static Form dx(int n, int axis);

    int dim() const { return n_; }
    int degree() const { return deg_; }
    const Comps& comps() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }
    bool is_constant() const;
    Poly component(Mask m) const;
    // Degree-0 value as a polynomial.
    Poly as_poly() const;

    void add(Mask m, const Poly& f);

    Form operator-() const;
    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    Form& operator*=(const Rat& c);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(Form a, const Rat& c) { return a *= c; }
    friend Form operator*(const Rat& c, Form a) { return a *= c; }
    friend Form operator*(const Poly& f, const Form& a);
    friend bool operator==(const Form& a, const Form& b) {
        return a.n_ == b.n_ && a.deg_ == b.deg_ && a.comps_ == b.comps_;
    }

    Form at(const std::vector<Rat>& point) const;
    std::string str() const;

private:
    void check(const Form& o) const;
    int n_ = 0;
    int deg_ = 0;
    Comps comps_;
};

class VField {
public:
    VField() = default;
    explicit VField(int n);
    explicit VField(std::vector<Poly> comps);
    static VField basis(int n, int axis, const Rat& c = 1);

    int dim() const { return static_cast<int>(c_.size()); }
    const Poly& operator[](int i) const { return c_[i]; }
    Poly& operator[](int i) { return c_[i]; }
    const std::vector<Poly>& comps() const { return c_; }
    bool is_zero() const;
    bool is_constant() const;

    VField operator-() const;
    VField& operator+=(const VField& o);
    VField& operator-=(const VField& o);
    VField& operator*=(const Rat& c);
    friend VField operator+(VField a, const VField& b) { return a += b; }
    friend VField operator-(VField a, const VField& b) { return a -= b; }
    friend VField operator*(VField a, const Rat& c) { return a *= c; }
    friend VField operator*(const Rat& c, VField a) { return a *= c; }
    friend VField operator*(const Poly& f, const VField& a);
    friend bool operator==(const VField& a, const VField& b) { return a.c_ == b.c_; }

    // X(f)
    Poly apply(const Poly& f) const;
    VField at(const std::vector<Rat>& point) const;
    std::string str() const;

private:
    std::vector<Poly> c_;
};

class MultiVec {
public:
    using Comps = std::map<Mask, Poly>;

    MultiVec() = default;
    MultiVec(int n, int degree);
    explicit MultiVec(const VField& X);
    static MultiVec basis(int n, Mask m, const Rat& c = 1);

    int dim() const { return n_; }
    int degree() const { return deg_; }
    const Comps& comps() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }
    Poly component(Mask m) const;
    void add(Mask m, const Poly& f);
    VField to_vfield() const;

    MultiVec operator-() const;
    MultiVec& operator+=(const MultiVec& o);
    MultiVec& operator-=(const MultiVec& o);
    MultiVec& operator*=(const Rat& c);
    friend MultiVec operator+(MultiVec a, const MultiVec& b) { return a += b; }
    friend MultiVec operator-(MultiVec a, const MultiVec& b) { return a -= b; }
    friend MultiVec operator*(MultiVec a, const Rat& c) { return a *= c; }
    friend MultiVec operator*(const Poly& f, const MultiVec& a);
    friend bool operator==(const MultiVec& a, const MultiVec& b) {
        return a.n_ == b.n_ && a.deg_ == b.deg_ && a.comps_ == b.comps_;
    }

    std::string str() const;

private:
    void check(const MultiVec& o) const;
    int n_ = 0;
    int deg_ = 0;
    Comps comps_;
};

Form wedge(const Form& a, const Form& b);
MultiVec wedge(const MultiVec& a, const MultiVec& b);

// Interior product i_X a.
Form interior(const VField& X, const Form& a);
// i_{X1^...^Xq} := i_{Xq} o ... o i_{X1}; zero when deg Y > deg a.
Form contract(const MultiVec& Y, const Form& a);
// i_alpha pi: alpha is fed into the first slots of pi, smallest form index first.
MultiVec contract(const Form& alpha, const MultiVec& pi);
// a(X1,...,Xk) = i_{Xk}...i_{X1} a, a zero-form.
Poly evaluate(const Form& a, const std::vector<VField>& args);

Form d(const Form& a);
Form lie_derivative(const VField& X, const Form& a);
VField lie_bracket(const VField& X, const VField& Y);
// Schouten bracket, expanded through decomposable terms f d_{i1} ^ d_{i2} ^ ...
MultiVec schouten(const MultiVec& A, const MultiVec& B);

// Polynomial map with polynomial inverse.
struct PolyAutomorphism {
    std::vector<Poly> map;
    std::vector<Poly> inverse;
};

// Pullback along the polynomial map x -> phi(x).
Form pullback(const Form& a, const std::vector<Poly>& phi);
// Vector field X with phi_* X = X0, for phi with polynomial inverse phi_inv.
VField pullback(const VField& X0, const std::vector<Poly>& phi, const std::vector<Poly>& phi_inv);
} // namespace diracspace
