#pragma once

#include "diracspace/rat.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace diracspace {

inline constexpr int kMaxVars = 16;

struct ContextMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Exponents = std::array<std::uint8_t, kMaxVars>;

// Polynomial in x1..xn with rational coefficients; zero coefficients are never stored.
class Poly {
public:
    using Terms = std::map<Exponents, Rat>;

    Poly() = default;
    explicit Poly(int n);
    Poly(int n, const Rat& c);

    static Poly constant(int n, const Rat& c) { return Poly(n, c); }
    static Poly variable(int n, int axis);
    static Poly monomial(int n, const Exponents& e, const Rat& c);

    int dim() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_term() const;
    int total_degree() const;  // -1 for zero
    std::size_t size() const { return terms_.size(); }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rat& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
    friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    // Adds c * monomial(e) in place.
    void add_term(const Exponents& e, const Rat& c);
    Poly pow(unsigned e) const;
    // Zero-based axis.
    Poly partial(int axis) const;
    Rat eval(const std::vector<Rat>& point) const;
    // Replaces x_axis by value.
    Poly substitute(int axis, const Poly& value) const;

    // Exact quotient if d divides *this, nothing otherwise. d must be nonzero.
    std::optional<Poly> divide_exact(const Poly& d) const;

    // Canonical text: terms by descending total degree then descending lex exponent.
    std::string str() const;

private:
    void check(const Poly& o) const;
    int n_ = 0;
    Terms terms_;
};

Poly partial(const Poly& f, int axis);
// f(phi_1, ..., phi_n); the result lives in the context of the phi_i.
Poly compose(const Poly& f, const std::vector<Poly>& phi);

} // namespace diracspace
