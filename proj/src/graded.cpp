#include "diracspace/graded.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace diracspace {

GPoly::GPoly(int r, int n) : r_(r), n_(n) {
    if (r < 2) throw std::invalid_argument("graded algebra needs r >= 2");
    if (n < 0 || n > kMaxVars) throw std::invalid_argument("dimension out of range");
}

GPoly GPoly::scalar(int r, const Poly& f) {
    GPoly g(r, f.dim());
    g.add(GKey{}, f);
    return g;
}

GPoly GPoly::x(int r, int n, int i) { return scalar(r, Poly::variable(n, i)); }

GPoly GPoly::v(int r, int n, int i) {
    GPoly g(r, n);
    GKey k;
    k.v = Mask(1) << i;
    g.add(k, Poly(n, 1));
    return g;
}

GPoly GPoly::p(int r, int n, int i) {
    GPoly g(r, n);
    GKey k;
    k.p[i] = 1;
    g.add(k, Poly(n, 1));
    return g;
}

GPoly GPoly::P(int r, int n, int i) {
    GPoly g(r, n);
    GKey k;
    k.P[i] = 1;
    g.add(k, Poly(n, 1));
    return g;
}

int GPoly::key_degree(const GKey& k) const {
    int sp = 0, sP = 0;
    for (int i = 0; i < n_; ++i) {
        sp += k.p[i];
        sP += k.P[i];
    }
    return popcount(k.v) + (r_ - 1) * sp + r_ * sP;
}

int GPoly::degree() const {
    if (terms_.empty()) throw std::logic_error("zero has no degree");
    int deg = key_degree(terms_.begin()->first);
    for (auto& [k, c] : terms_)
        if (key_degree(k) != deg) throw std::logic_error("inhomogeneous element");
    return deg;
}

void GPoly::check(const GPoly& o) const {
    if (r_ != o.r_ || n_ != o.n_) throw ContextMismatch("graded polynomials from different contexts");
}

void GPoly::add(const GKey& k, const Poly& c) {
    if (c.is_zero()) return;
    if (c.dim() != n_) throw ContextMismatch("coefficient lives in another dimension");
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

GPoly& GPoly::operator+=(const GPoly& o) {
    check(o);
    for (auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

GPoly& GPoly::operator-=(const GPoly& o) {
    check(o);
    for (auto& [k, c] : o.terms_) add(k, -c);
    return *this;
}

GPoly& GPoly::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, f] : terms_) f *= c;
    return *this;
}

std::string GPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms_) {
        std::string word;
        auto put = [&](const char* name, int i, int e) {
            if (!word.empty()) word += "*";
            word += name + std::to_string(i + 1);
            if (e > 1) word += "^" + std::to_string(e);
        };
        for (int i : mask_axes(k.v)) put("v", i, 1);
        for (int i = 0; i < n_; ++i)
            if (k.p[i]) put("p", i, k.p[i]);
        for (int i = 0; i < n_; ++i)
            if (k.P[i]) put("P", i, k.P[i]);
        std::string coeff = c.size() == 1 ? c.str() : "(" + c.str() + ")";
        bool negative = coeff[0] == '-';
        if (negative) coeff = coeff.substr(1);
        if (!first) os << (negative ? " - " : " + ");
        else if (negative) os << "-";
        first = false;
        if (word.empty()) os << coeff;
        else if (coeff == "1") os << word;
        else os << coeff << "*" << word;
    }
    return os.str();
}

namespace {

// Odd generators of k in canonical order, as v_i -> i, p_i -> n + i, P_i -> 2n + i.
std::vector<int> odd_gens(const GKey& k, int n, bool p_odd, bool P_odd) {
    std::vector<int> out = mask_axes(k.v);
    if (p_odd)
        for (int i = 0; i < n; ++i)
            if (k.p[i]) out.push_back(n + i);
    if (P_odd)
        for (int i = 0; i < n; ++i)
            if (k.P[i]) out.push_back(2 * n + i);
    return out;
}

} // namespace

GPoly gmul(const GPoly& a, const GPoly& b) {
    if (a.r() != b.r() || a.dim() != b.dim()) throw ContextMismatch("graded polynomials from different contexts");
    int n = a.dim();
    GPoly out(a.r(), n);
    for (auto& [ka, ca] : a.terms()) {
        std::vector<int> oa = odd_gens(ka, n, a.p_odd(), a.P_odd());
        for (auto& [kb, cb] : b.terms()) {
            if (ka.v & kb.v) continue;
            GKey k;
            k.v = ka.v | kb.v;
            bool vanish = false;
            for (int i = 0; i < n && !vanish; ++i) {
                k.p[i] = static_cast<std::uint8_t>(ka.p[i] + kb.p[i]);
                k.P[i] = static_cast<std::uint8_t>(ka.P[i] + kb.P[i]);
                if ((a.p_odd() && k.p[i] > 1) || (a.P_odd() && k.P[i] > 1)) vanish = true;
            }
            if (vanish) continue;
            int inv = 0;
            for (int g : odd_gens(kb, n, a.p_odd(), a.P_odd()))
                for (int h : oa)
                    if (h > g) ++inv;
            Poly c = ca * cb;
            if (inv % 2) c = -c;
            out.add(k, c);
        }
    }
    return out;
}

GPoly gpartial(const GPoly& a, Gen g, int i, bool right) {
    int n = a.dim();
    if (i < 0 || i >= n) throw std::invalid_argument("generator index out of range");
    GPoly out(a.r(), n);
    for (auto& [k, c] : a.terms()) {
        if (g == Gen::x) {
            out.add(k, c.partial(i));
            continue;
        }
        GKey nk = k;
        bool odd = false;
        int before = 0;
        Rat mult = 1;
        if (g == Gen::v) {
            if (!(k.v >> i & 1u)) continue;
            nk.v &= ~(Mask(1) << i);
            odd = true;
            before = popcount(k.v & ((Mask(1) << i) - 1));
        } else if (g == Gen::p) {
            if (!k.p[i]) continue;
            mult = k.p[i];
            nk.p[i] -= 1;
            odd = a.p_odd();
            before = popcount(k.v);
            for (int j = 0; j < i; ++j) before += k.p[j];
        } else {
            if (!k.P[i]) continue;
            mult = k.P[i];
            nk.P[i] -= 1;
            odd = a.P_odd();
            before = popcount(k.v);
            if (a.p_odd())
                for (int j = 0; j < n; ++j) before += k.p[j];
            for (int j = 0; j < i; ++j) before += k.P[j];
        }
        int passed = 0;
        if (odd) {
            int total = static_cast<int>(odd_gens(k, n, a.p_odd(), a.P_odd()).size());
            passed = right ? total - before - 1 : before;
        }
        Poly nc = c * mult;
        if (passed % 2) nc = -nc;
        out.add(nk, nc);
    }
    return out;
}

GPoly gbracket(const GPoly& a, const GPoly& b) {
    if (a.r() != b.r() || a.dim() != b.dim()) throw ContextMismatch("graded polynomials from different contexts");
    int n = a.dim();
    GPoly out(a.r(), n);
    Rat vp(-sign_pow(a.r() - 1));
    for (int i = 0; i < n; ++i) {
        auto term = [&](Gen ga, Gen gb, const Rat& c) {
            GPoly l = gpartial(a, ga, i, true);
            if (l.is_zero()) return;
            GPoly rr = gpartial(b, gb, i, false);
            if (rr.is_zero()) return;
            out += gmul(l, rr) * c;
        };
        term(Gen::P, Gen::x, 1);
        term(Gen::x, Gen::P, -1);
        term(Gen::p, Gen::v, 1);
        term(Gen::v, Gen::p, vp);
    }
    return out;
}

GPoly euler_S(int r, int n) {
    GPoly s(r, n);
    for (int i = 0; i < n; ++i) s += gmul(GPoly::v(r, n, i), GPoly::P(r, n, i));
    return s;
}

GPoly encode(const Form& a, int r) {
    GPoly g(r, a.dim());
    for (auto& [m, f] : a.comps()) {
        GKey k;
        k.v = m;
        g.add(k, f);
    }
    return g;
}

GPoly encode(const VField& X, int r) {
    GPoly g(r, X.dim());
    for (int i = 0; i < X.dim(); ++i) {
        GKey k;
        k.p[i] = 1;
        g.add(k, X[i]);
    }
    return g;
}

GPoly encode(const SectionEp& e, int r) {
    if (e.alpha.degree() != r - 1) throw DegreeError("section form part must have degree r - 1");
    return encode(e.X, r) + encode(e.alpha, r);
}

namespace {

bool pure_v(const GKey& k) {
    return std::all_of(k.p.begin(), k.p.end(), [](auto e) { return e == 0; }) &&
           std::all_of(k.P.begin(), k.P.end(), [](auto e) { return e == 0; });
}

} // namespace

Form decode_form(const GPoly& g, int degree) {
    Form f(g.dim(), degree);
    for (auto& [k, c] : g.terms()) {
        if (!pure_v(k) || popcount(k.v) != degree) throw DegreeError("element is not a form of degree " + std::to_string(degree));
        f.add(k.v, c);
    }
    return f;
}

std::variant<Form, SectionEp> decode(const GPoly& g, int degree) {
    int r = g.r(), n = g.dim();
    if (degree < 0 || degree > r - 1) throw DegreeError("degree outside the encodable range");
    if (degree < r - 1) return decode_form(g, degree);
    GPoly forms(r, n);
    VField X(n);
    for (auto& [k, c] : g.terms()) {
        int sp = 0, at = -1;
        for (int i = 0; i < n; ++i) {
            sp += k.p[i];
            if (k.p[i]) at = i;
        }
        bool noP = std::all_of(k.P.begin(), k.P.end(), [](auto e) { return e == 0; });
        if (sp == 1 && k.v == 0 && noP)
            X[at] += c;
        else
            forms.add(k, c);
    }
    return SectionEp(X, decode_form(forms, r - 1));
}

namespace {

struct Checker {
    Report& rep;
    void operator()(bool ok, const std::string& what) {
        if (!ok) rep.witnesses.push_back(what);
    }
};

GPoly nested(GPoly t, const std::vector<GPoly>& as) {
    for (auto& a : as) {
        if (t.is_zero()) break;
        t = gbracket(t, a);
    }
    return t;
}

} // namespace

Report derived_check(int r, const Form& H, const std::string& facts, Sampler& rng, int trials) {
    int n = H.dim();
    if (H.degree() != r + 1) throw DegreeError("H must have degree r + 1");
    Report rep{"derived-bracket", true, {}};
    Checker ok{rep};
    GPoly S = euler_S(r, n);
    auto rk = [&] { return static_cast<int>(rng.uniform(0, r - 1)); };
    auto has = [&](char c) { return facts.find(c) != std::string::npos; };
    for (int t = 0; t < trials; ++t) {
        std::string tag = " (trial " + std::to_string(t) + ")";
        if (has('a')) {
            int k1 = rk(), k2 = rk();
            VField X1 = rng.vfield(n), X2 = rng.vfield(n);
            Form x1 = rng.form(n, k1), x2 = rng.form(n, k2);
            GPoly lhs = gbracket(encode(X1, r) + encode(x1, r), encode(X2, r) + encode(x2, r));
            GPoly rhs = encode(interior(X1, x2), r) + encode(interior(X2, x1), r) * Rat(sign_pow(r - 1 - k1));
            ok(lhs == rhs, "a: pairing formula" + tag);
            SectionEp e1(X1, rng.form(n, r - 1)), e2(X2, rng.form(n, r - 1));
            ok(gbracket(encode(e1, r), encode(e2, r)) == encode(pairing(e1, e2), r), "a: pairing of sections" + tag);
        }
        if (has('b')) {
            Form x1 = rng.form(n, rk());
            ok(gbracket(S, encode(x1, r)) == encode(d(x1), r), "b: {S, xi} = d xi" + tag);
        }
        if (has('c')) {
            int k1 = rk(), k2 = rk();
            VField X1 = rng.vfield(n), X2 = rng.vfield(n);
            Form x1 = rng.form(n, k1), x2 = rng.form(n, k2);
            GPoly sX1 = gbracket(S, encode(X1, r)), sx1 = gbracket(S, encode(x1, r));
            ok(gbracket(sX1, encode(X2, r)) == encode(lie_bracket(X1, X2), r), "c: {{S,X1},X2} = [X1,X2]" + tag);
            ok(gbracket(sx1, encode(x2, r)).is_zero(), "c: {{S,xi1},xi2} = 0" + tag);
            ok(gbracket(sX1, encode(x2, r)) == encode(lie_derivative(X1, x2), r), "c: {{S,X1},xi2} = L xi2" + tag);
            ok(gbracket(sx1, encode(X2, r)) == encode(interior(X2, d(x1)), r) * Rat(-sign_pow(r - 1 - k1)),
               "c: {{S,xi1},X2}" + tag);
            SectionEp e1(X1, rng.form(n, r - 1)), e2(X2, rng.form(n, r - 1));
            ok(gbracket(gbracket(S, encode(e1, r)), encode(e2, r)) == encode(dorfman(e1, e2), r), "c: Dorfman" + tag);
        }
        if (has('d')) {
            for (int m = 3; m <= 4; ++m)
                for (unsigned pat = 0; pat < (1u << m); ++pat) {
                    std::vector<GPoly> as;
                    for (int k = 0; k < m; ++k)
                        as.push_back(pat >> k & 1u ? encode(rng.form(n, rk()), r) : encode(rng.vfield(n), r));
                    int front = std::popcount(pat & 7u), forms = std::popcount(pat);
                    bool may = front == 1 && forms == 1;
                    if (!may)
                        ok(nested(S, as).is_zero(), "d: nonvanishing nested bracket, pattern " + std::to_string(pat) + tag);
                }
        }
        if (has('H')) {
            GPoly h = encode(H, r);
            for (int m = 1; m <= r + 1; ++m) {
                std::vector<VField> X;
                std::vector<GPoly> as;
                Form c = H;
                for (int k = 0; k < m; ++k) {
                    X.push_back(rng.vfield(n));
                    as.push_back(encode(X.back(), r));
                    c = interior(X.back(), c);
                }
                ok(nested(h, as) == encode(c, r) * Rat(sign_pow(m * (m - 1) / 2)), "H: all fields, n = " + std::to_string(m) + tag);
                int slot = static_cast<int>(rng.uniform(0, m - 1));
                as[slot] = encode(rng.form(n, rk()), r);
                ok(nested(h, as).is_zero(), "H: one form, n = " + std::to_string(m) + tag);
            }
        }
    }
    rep.pass = rep.witnesses.empty();
    return rep;
}

int decalage_sign(const std::vector<int>& degrees) {
    long e = 0;
    int n = static_cast<int>(degrees.size());
    for (int i = 1; i < n; ++i) e += static_cast<long>(degrees[i - 1]) * (n - i);
    return sign_pow(e);
}

namespace {

Rat factorial(int k) {
    Rat f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

GPoly encode_elem(const GradedElem& e, int r) {
    if (e.degree == 0) return encode(e.as_section(), r);
    return encode(e.form, r);
}

} // namespace

GPoly getzler_symmetric_bracket(int r, const Form& H, const std::vector<GradedElem>& elems) {
    int n = static_cast<int>(elems.size());
    if (n == 0) throw ArityError("brackets take at least one argument");
    int dim = H.dim();
    GPoly delta = euler_S(r, dim) - encode(H, r);
    std::vector<GPoly> enc;
    std::vector<int> vdeg;
    for (auto& e : elems) {
        enc.push_back(encode_elem(e, r));
        vdeg.push_back(e.degree - 1);
    }
    if (n == 1) return elems[0].degree == 0 ? GPoly(r, dim) : gbracket(delta, enc[0]);
    std::vector<GPoly> d0(n, GPoly(r, dim));
    for (int k = 0; k < n; ++k)
        if (elems[k].degree == 0) d0[k] = gbracket(delta, enc[k]);
    GPoly sum(r, dim);
    Permutation s(n);
    std::iota(s.begin(), s.end(), 0);
    do {
        if (d0[s[0]].is_zero()) continue;
        GPoly t = d0[s[0]];
        for (int k = 1; k < n && !t.is_zero(); ++k) t = gbracket(t, enc[s[k]]);
        if (t.is_zero()) continue;
        int eps = 1;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (s[a] > s[b]) eps *= sign_pow(vdeg[s[a]] * vdeg[s[b]]);
        sum += t * Rat(eps);
    } while (std::next_permutation(s.begin(), s.end()));
    Rat c = Rat(sign_pow(n * (n + 1) / 2)) * bernoulli(n - 1) / factorial(n - 1);
    return sum * c;
}

GradedElem oracle_multibracket(int r, const Form& H, const std::vector<GradedElem>& elems) {
    int n = static_cast<int>(elems.size());
    if (n == 0 || n > 5) throw ArityError("oracle brackets take 1 to 5 arguments");
    int dim = H.dim();
    int out = 2 - n;
    std::vector<int> degs;
    for (auto& e : elems) {
        out += e.degree;
        degs.push_back(e.degree);
    }
    if (out > 0 || out < 1 - r) return GradedElem::zero(dim, r, out);
    GPoly g = getzler_symmetric_bracket(r, H, elems);
    g *= Rat(sign_pow((n - 1) * (n - 2) / 2) * decalage_sign(degs));
    auto v = decode(g, out + r - 1);
    if (auto* e = std::get_if<SectionEp>(&v)) return GradedElem::section(*e);
    return GradedElem::of_form(std::get<Form>(v), r);
}

} // namespace diracspace
