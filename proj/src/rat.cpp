#include "diracspace/rat.hpp"

#include <stdexcept>
#include <vector>

namespace diracspace {

Rat::Rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    v_ /= o.v_;
    return *this;
}

Rat Rat::parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    auto digits_ok = [](const std::string& t, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string a = slash == std::string::npos ? s : s.substr(0, slash);
    std::string b = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(a, true) || !digits_ok(b, false)) throw std::invalid_argument("bad rational '" + s + "'");
    if (a[0] == '+') a = a.substr(1);
    mpz_class num(a), den(b);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return Rat(q);
}

Rat pow(const Rat& base, unsigned e) {
    Rat r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

Rat binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Rat(mpq_class(r));
}

Rat factorial(unsigned n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return Rat(mpq_class(r));
}

namespace {

std::vector<Rat> bernoulli_table(unsigned upto) {
    std::vector<Rat> b{Rat(1)};
    for (unsigned k = 1; k <= upto; ++k) {
        Rat s = 0;
        for (unsigned j = 0; j < k; ++j) s += binomial(k + 1, j) * b[j];
        b.push_back(-s / Rat(static_cast<long>(k + 1)));
    }
    return b;
}

} // namespace

Rat bernoulli(unsigned m) {
    static const std::vector<Rat> table = bernoulli_table(64);
    if (m < table.size()) return table[m];
    return bernoulli_table(m)[m];
}

} // namespace diracspace
