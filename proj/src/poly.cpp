#include "diracspace/poly.hpp"

#include <algorithm>
#include <sstream>

namespace diracspace {

namespace {

void check_dim(int n) {
    if (n < 0 || n > kMaxVars) throw std::invalid_argument("patch dimension out of range [0,16]");
}

int degree_of(const Exponents& e) {
    int d = 0;
    for (auto v : e) d += v;
    return d;
}

} // namespace

Poly::Poly(int n) : n_(n) { check_dim(n); }

Poly::Poly(int n, const Rat& c) : n_(n) {
    check_dim(n);
    if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

Poly Poly::variable(int n, int axis) {
    if (axis < 0 || axis >= n) throw std::out_of_range("axis out of range");
    Exponents e{};
    e[axis] = 1;
    return monomial(n, e, 1);
}

Poly Poly::monomial(int n, const Exponents& e, const Rat& c) {
    Poly p(n);
    for (int i = n; i < kMaxVars; ++i)
        if (e[i] != 0) throw std::invalid_argument("exponent on variable beyond patch dimension");
    if (!c.is_zero()) p.terms_.emplace(e, c);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{});
}

Rat Poly::constant_term() const {
    auto it = terms_.find(Exponents{});
    return it == terms_.end() ? Rat(0) : it->second;
}

int Poly::total_degree() const {
    int d = -1;
    for (auto& [e, c] : terms_) d = std::max(d, degree_of(e));
    return d;
}

void Poly::check(const Poly& o) const {
    if (n_ != o.n_) throw ContextMismatch("polynomials live on patches of different dimension");
}

void Poly::add_term(const Exponents& e, const Rat& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    check(o);
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check(o);
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly& Poly::operator*=(const Rat& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    Poly r(a.n_);
    if (a.is_zero() || b.is_zero()) return r;
    for (auto& [ea, ca] : a.terms_)
        for (auto& [eb, cb] : b.terms_) {
            Exponents e;
            for (int i = 0; i < kMaxVars; ++i) {
                unsigned s = unsigned(ea[i]) + eb[i];
                if (s > 255) throw std::overflow_error("exponent overflow");
                e[i] = static_cast<std::uint8_t>(s);
            }
            r.add_term(e, ca * cb);
        }
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r(n_, 1);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

Poly Poly::partial(int axis) const {
    if (axis < 0 || axis >= n_) throw std::out_of_range("axis index out of range");
    Poly r(n_);
    for (auto& [e, c] : terms_) {
        if (e[axis] == 0) continue;
        Exponents f = e;
        f[axis] -= 1;
        r.terms_.emplace(f, c * Rat(static_cast<long>(e[axis])));
    }
    return r;
}

Poly partial(const Poly& f, int axis) { return f.partial(axis); }

Poly compose(const Poly& f, const std::vector<Poly>& phi) {
    if (static_cast<int>(phi.size()) != f.dim()) throw ContextMismatch("composition needs one polynomial per variable");
    if (phi.empty()) return f;
    int m = phi[0].dim();
    Poly r(m);
    for (auto& [e, c] : f.terms()) {
        Poly t(m, c);
        for (int i = 0; i < f.dim(); ++i)
            if (e[i]) t = t * phi[i].pow(e[i]);
        r += t;
    }
    return r;
}

Rat Poly::eval(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) != n_) throw ContextMismatch("evaluation point has wrong length");
    Rat r = 0;
    for (auto& [e, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < n_; ++i)
            if (e[i]) t *= diracspace::pow(point[i], e[i]);
        r += t;
    }
    return r;
}

Poly Poly::substitute(int axis, const Poly& value) const {
    check(value);
    if (axis < 0 || axis >= n_) throw std::out_of_range("axis index out of range");
    Poly r(n_);
    for (auto& [e, c] : terms_) {
        Exponents f = e;
        f[axis] = 0;
        r += monomial(n_, f, c) * value.pow(e[axis]);
    }
    return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
    check(d);
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    Poly rem = *this;
    Poly q(n_);
    auto [ld, lc] = *d.terms_.rbegin();
    while (!rem.is_zero()) {
        auto [le, c] = *rem.terms_.rbegin();
        Exponents m;
        for (int i = 0; i < kMaxVars; ++i) {
            if (le[i] < ld[i]) return std::nullopt;
            m[i] = static_cast<std::uint8_t>(le[i] - ld[i]);
        }
        Poly t = monomial(n_, m, c / lc);
        q += t;
        rem -= t * d;
    }
    return q;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exponents, Rat>> v(terms_.begin(), terms_.end());
    std::stable_sort(v.begin(), v.end(), [](auto& a, auto& b) {
        int da = degree_of(a.first), db = degree_of(b.first);
        if (da != db) return da > db;
        return a.first > b.first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : v) {
        Rat mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool has_var = e != Exponents{};
        bool wrote = false;
        if (!mag.is_one() || !has_var) {
            os << mag.str();
            wrote = true;
        }
        for (int i = 0; i < n_; ++i) {
            if (!e[i]) continue;
            if (wrote) os << "*";
            if (i < 9) os << "x" << (i + 1);
            else os << "x{" << (i + 1) << "}";
            if (e[i] > 1) os << "^" << int(e[i]);
            wrote = true;
        }
    }
    return os.str();
}

} // namespace diracspace
