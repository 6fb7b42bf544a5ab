#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace diracspace {

// Exact rational in lowest terms with positive denominator.
class Rat {
public:
    Rat() = default;
    template <std::integral I>
    Rat(I v) : v_(static_cast<long>(v)) {}
    Rat(long num, long den);
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Accepts "p", "-p", "p/q". Throws std::invalid_argument on junk or zero denominator.
    static Rat parse(std::string_view text);

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    std::string str() const { return v_.get_str(); }
    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    mpq_class v_;
};

Rat pow(const Rat& base, unsigned e);
Rat binomial(unsigned n, unsigned k);
Rat factorial(unsigned n);

// B_m with B_1 = -1/2, from sum_{k=0}^{m} C(m+1,k) B_k = 0.
Rat bernoulli(unsigned m);

inline int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

} // namespace diracspace
