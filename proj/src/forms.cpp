#include "diracspace/forms.hpp"

#include <bit>
#include <mutex>
#include <sstream>

namespace diracspace {

int popcount(Mask m) { return std::popcount(m); }

std::vector<int> mask_axes(Mask m) {
    std::vector<int> v;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1u) v.push_back(i);
    return v;
}

namespace {

void lex_rec(int n, int k, int start, Mask cur, std::vector<Mask>& out) {
    if (k == 0) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i <= n - k; ++i) lex_rec(n, k - 1, i + 1, cur | (Mask(1) << i), out);
}

Mask below(int i) { return (Mask(1) << i) - 1; }

std::string axis_name(const char* prefix, int i) {
    std::ostringstream os;
    if (i < 9) os << prefix << (i + 1);
    else os << prefix << "{" << (i + 1) << "}";
    return os.str();
}

std::string mask_name(const char* prefix, Mask m) {
    std::string s;
    for (int i : mask_axes(m)) {
        if (!s.empty()) s += "^";
        s += axis_name(prefix, i);
    }
    return s;
}

// Shared printer for forms and multivectors: coefficient * basis terms in lexicographic tuple order.
std::string print_terms(int n, int k, const std::map<Mask, Poly>& comps, const char* prefix) {
    if (comps.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (Mask m : lex_masks(n, k)) {
        auto it = comps.find(m);
        if (it == comps.end()) continue;
        const Poly& f = it->second;
        std::string basis = mask_name(prefix, m);
        std::string coeff;
        bool negative = false;
        if (f.size() == 1) {
            coeff = f.str();
            if (coeff[0] == '-') {
                negative = true;
                coeff = coeff.substr(1);
            }
        } else {
            coeff = "(" + f.str() + ")";
        }
        if (first) os << (negative ? "-" : "");
        else os << (negative ? " - " : " + ");
        first = false;
        if (basis.empty()) os << coeff;
        else if (coeff == "1") os << basis;
        else os << coeff << "*" << basis;
    }
    return os.str();
}

} // namespace

const std::vector<Mask>& lex_masks(int n, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<Mask>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Mask> v;
    if (k >= 0 && k <= n) lex_rec(n, k, 0, 0, v);
    return cache.emplace(key, std::move(v)).first->second;
}

int wedge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    int inv = 0;
    for (Mask t = b; t; t &= t - 1) {
        int j = std::countr_zero(t);
        inv += std::popcount(a & ~below(j + 1));
    }
    return inv % 2 ? -1 : 1;
}

int contract_sign(Mask I, Mask J) {
    if ((I & J) != I) return 0;
    int s = 1;
    for (Mask t = I; t; t &= t - 1) {
        int i = std::countr_zero(t);
        if (std::popcount(J & below(i)) % 2) s = -s;
        J &= ~(Mask(1) << i);
    }
    return s;
}

// ---- Form ----

Form::Form(int n, int degree) : n_(n), deg_(degree) {
    if (n < 0 || n > kMaxVars) throw std::invalid_argument("patch dimension out of range");
}

Form Form::scalar(const Poly& f) {
    Form r(f.dim(), 0);
    r.add(0, f);
    return r;
}

Form Form::basis(int n, Mask m, const Rat& c) {
    Form r(n, popcount(m));
    r.add(m, Poly(n, c));
    return r;
}

Form Form::dx(int n, int axis) {
    if (axis < 0 || axis >= n) throw std::out_of_range("axis out of range");
    return basis(n, Mask(1) << axis);
}

bool Form::is_constant() const {
    for (auto& [m, f] : comps_)
        if (!f.is_constant()) return false;
    return true;
}

Poly Form::component(Mask m) const {
    auto it = comps_.find(m);
    return it == comps_.end() ? Poly(n_) : it->second;
}

Poly Form::as_poly() const {
    if (deg_ != 0) throw std::invalid_argument("form of positive degree is not a function");
    return component(0);
}

void Form::add(Mask m, const Poly& f) {
    if (f.is_zero()) return;
    if (f.dim() != n_) throw ContextMismatch("coefficient lives on a different patch");
    if (popcount(m) != deg_ || (n_ < 32 && (m >> n_) != 0)) throw std::invalid_argument("basis index does not match form degree");
    auto [it, fresh] = comps_.try_emplace(m, f);
    if (!fresh) {
        it->second += f;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

void Form::check(const Form& o) const {
    if (n_ != o.n_) throw ContextMismatch("forms live on patches of different dimension");
    if (deg_ != o.deg_) throw std::invalid_argument("adding forms of different degree");
}

Form Form::operator-() const {
    Form r = *this;
    for (auto& [m, f] : r.comps_) f = -f;
    return r;
}

Form& Form::operator+=(const Form& o) {
    check(o);
    for (auto& [m, f] : o.comps_) add(m, f);
    return *this;
}

Form& Form::operator-=(const Form& o) {
    check(o);
    for (auto& [m, f] : o.comps_) add(m, -f);
    return *this;
}

Form& Form::operator*=(const Rat& c) {
    if (c.is_zero()) comps_.clear();
    for (auto& [m, f] : comps_) f *= c;
    return *this;
}

Form operator*(const Poly& f, const Form& a) {
    if (f.dim() != a.n_) throw ContextMismatch("scalar lives on a different patch");
    Form r(a.n_, a.deg_);
    for (auto& [m, g] : a.comps_) r.add(m, f * g);
    return r;
}

Form Form::at(const std::vector<Rat>& point) const {
    Form r(n_, deg_);
    for (auto& [m, f] : comps_) r.add(m, Poly(n_, f.eval(point)));
    return r;
}

std::string Form::str() const { return print_terms(n_, deg_, comps_, "dx"); }

// ---- VField ----

VField::VField(int n) : c_(n, Poly(n)) {}

VField::VField(std::vector<Poly> comps) : c_(std::move(comps)) {
    for (auto& f : c_)
        if (f.dim() != dim()) throw ContextMismatch("vector field components on different patches");
}

VField VField::basis(int n, int axis, const Rat& c) {
    if (axis < 0 || axis >= n) throw std::out_of_range("axis out of range");
    VField X(n);
    X.c_[axis] = Poly(n, c);
    return X;
}

bool VField::is_zero() const {
    for (auto& f : c_)
        if (!f.is_zero()) return false;
    return true;
}

bool VField::is_constant() const {
    for (auto& f : c_)
        if (!f.is_constant()) return false;
    return true;
}

VField VField::operator-() const {
    VField r = *this;
    for (auto& f : r.c_) f = -f;
    return r;
}

VField& VField::operator+=(const VField& o) {
    if (dim() != o.dim()) throw ContextMismatch("vector fields on different patches");
    for (int i = 0; i < dim(); ++i) c_[i] += o.c_[i];
    return *this;
}

VField& VField::operator-=(const VField& o) {
    if (dim() != o.dim()) throw ContextMismatch("vector fields on different patches");
    for (int i = 0; i < dim(); ++i) c_[i] -= o.c_[i];
    return *this;
}

VField& VField::operator*=(const Rat& c) {
    for (auto& f : c_) f *= c;
    return *this;
}

VField operator*(const Poly& f, const VField& a) {
    VField r = a;
    for (auto& g : r.c_) g = f * g;
    return r;
}

Poly VField::apply(const Poly& f) const {
    if (f.dim() != dim()) throw ContextMismatch("function and vector field on different patches");
    Poly r(dim());
    for (int i = 0; i < dim(); ++i)
        if (!c_[i].is_zero()) r += c_[i] * f.partial(i);
    return r;
}

VField VField::at(const std::vector<Rat>& point) const {
    VField r(dim());
    for (int i = 0; i < dim(); ++i) r.c_[i] = Poly(dim(), c_[i].eval(point));
    return r;
}

std::string VField::str() const { return MultiVec(*this).str(); }

// ---- MultiVec ----

MultiVec::MultiVec(int n, int degree) : n_(n), deg_(degree) {
    if (n < 0 || n > kMaxVars) throw std::invalid_argument("patch dimension out of range");
}

MultiVec::MultiVec(const VField& X) : n_(X.dim()), deg_(1) {
    for (int i = 0; i < n_; ++i) add(Mask(1) << i, X[i]);
}

MultiVec MultiVec::basis(int n, Mask m, const Rat& c) {
    MultiVec r(n, popcount(m));
    r.add(m, Poly(n, c));
    return r;
}

Poly MultiVec::component(Mask m) const {
    auto it = comps_.find(m);
    return it == comps_.end() ? Poly(n_) : it->second;
}

void MultiVec::add(Mask m, const Poly& f) {
    if (f.is_zero()) return;
    if (f.dim() != n_) throw ContextMismatch("coefficient lives on a different patch");
    if (popcount(m) != deg_ || (m >> n_) != 0) throw std::invalid_argument("basis index does not match multivector degree");
    auto [it, fresh] = comps_.try_emplace(m, f);
    if (!fresh) {
        it->second += f;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

VField MultiVec::to_vfield() const {
    if (deg_ != 1) throw std::invalid_argument("multivector is not of degree 1");
    VField X(n_);
    for (auto& [m, f] : comps_) X[std::countr_zero(m)] = f;
    return X;
}

void MultiVec::check(const MultiVec& o) const {
    if (n_ != o.n_) throw ContextMismatch("multivectors on different patches");
    if (deg_ != o.deg_) throw std::invalid_argument("adding multivectors of different degree");
}

MultiVec MultiVec::operator-() const {
    MultiVec r = *this;
    for (auto& [m, f] : r.comps_) f = -f;
    return r;
}

MultiVec& MultiVec::operator+=(const MultiVec& o) {
    check(o);
    for (auto& [m, f] : o.comps_) add(m, f);
    return *this;
}

MultiVec& MultiVec::operator-=(const MultiVec& o) {
    check(o);
    for (auto& [m, f] : o.comps_) add(m, -f);
    return *this;
}

MultiVec& MultiVec::operator*=(const Rat& c) {
    if (c.is_zero()) comps_.clear();
    for (auto& [m, f] : comps_) f *= c;
    return *this;
}

MultiVec operator*(const Poly& f, const MultiVec& a) {
    MultiVec r(a.n_, a.deg_);
    for (auto& [m, g] : a.comps_) r.add(m, f * g);
    return r;
}

std::string MultiVec::str() const { return print_terms(n_, deg_, comps_, "Dx"); }

// ---- operations ----

Form wedge(const Form& a, const Form& b) {
    if (a.dim() != b.dim()) throw ContextMismatch("wedge of forms on different patches");
    Form r(a.dim(), a.degree() + b.degree());
    if (a.degree() + b.degree() > a.dim()) return r;
    for (auto& [ma, fa] : a.comps())
        for (auto& [mb, fb] : b.comps()) {
            int s = wedge_sign(ma, mb);
            if (s == 0) continue;
            r.add(ma | mb, s > 0 ? fa * fb : -(fa * fb));
        }
    return r;
}

MultiVec wedge(const MultiVec& a, const MultiVec& b) {
    if (a.dim() != b.dim()) throw ContextMismatch("wedge of multivectors on different patches");
    MultiVec r(a.dim(), a.degree() + b.degree());
    if (a.degree() + b.degree() > a.dim()) return r;
    for (auto& [ma, fa] : a.comps())
        for (auto& [mb, fb] : b.comps()) {
            int s = wedge_sign(ma, mb);
            if (s == 0) continue;
            r.add(ma | mb, s > 0 ? fa * fb : -(fa * fb));
        }
    return r;
}

Form interior(const VField& X, const Form& a) {
    if (X.dim() != a.dim()) throw ContextMismatch("interior product across patches");
    Form r(a.dim(), a.degree() - 1);
    if (a.degree() == 0) return r;
    for (auto& [m, f] : a.comps())
        for (Mask t = m; t; t &= t - 1) {
            int i = std::countr_zero(t);
            if (X[i].is_zero()) continue;
            Poly g = X[i] * f;
            r.add(m & ~(Mask(1) << i), std::popcount(m & below(i)) % 2 ? -g : g);
        }
    return r;
}

Form contract(const MultiVec& Y, const Form& a) {
    if (Y.dim() != a.dim()) throw ContextMismatch("contraction across patches");
    Form r(a.dim(), a.degree() - Y.degree());
    if (Y.degree() > a.degree()) return r;
    for (auto& [mi, fi] : Y.comps())
        for (auto& [mj, fj] : a.comps()) {
            int s = contract_sign(mi, mj);
            if (s == 0) continue;
            r.add(mj & ~mi, s > 0 ? fi * fj : -(fi * fj));
        }
    return r;
}

MultiVec contract(const Form& alpha, const MultiVec& pi) {
    if (alpha.dim() != pi.dim()) throw ContextMismatch("contraction across patches");
    MultiVec r(pi.dim(), pi.degree() - alpha.degree());
    if (alpha.degree() > pi.degree()) return r;
    for (auto& [mj, fj] : alpha.comps())
        for (auto& [mi, fi] : pi.comps()) {
            int s = contract_sign(mj, mi);
            if (s == 0) continue;
            r.add(mi & ~mj, s > 0 ? fi * fj : -(fi * fj));
        }
    return r;
}

Poly evaluate(const Form& a, const std::vector<VField>& args) {
    if (static_cast<int>(args.size()) != a.degree()) throw std::invalid_argument("wrong number of arguments for form evaluation");
    Form t = a;
    for (auto& X : args) t = interior(X, t);
    return t.as_poly();
}

Form d(const Form& a) {
    int n = a.dim();
    Form r(n, a.degree() + 1);
    if (a.degree() >= n) return r;
    for (auto& [m, f] : a.comps())
        for (int i = 0; i < n; ++i) {
            if (m & (Mask(1) << i)) continue;
            Poly g = f.partial(i);
            if (g.is_zero()) continue;
            r.add(m | (Mask(1) << i), std::popcount(m & below(i)) % 2 ? -g : g);
        }
    return r;
}

Form lie_derivative(const VField& X, const Form& a) {
    Form r = interior(X, d(a));
    if (a.degree() > 0) r += d(interior(X, a));
    return r;
}

VField lie_bracket(const VField& X, const VField& Y) {
    if (X.dim() != Y.dim()) throw ContextMismatch("bracket of vector fields on different patches");
    int n = X.dim();
    VField r(n);
    for (int i = 0; i < n; ++i) r[i] = X.apply(Y[i]) - Y.apply(X[i]);
    return r;
}

namespace {

// f d_{i1} ^ d_{i2} ^ ... as a list of vector fields with f on the first factor.
std::vector<VField> decompose(int n, Mask m, const Poly& f) {
    std::vector<VField> out;
    bool first = true;
    for (int i : mask_axes(m)) {
        VField X(n);
        X[i] = first ? f : Poly(n, 1);
        first = false;
        out.push_back(std::move(X));
    }
    return out;
}

MultiVec wedge_all(int n, const std::vector<VField>& fs) {
    MultiVec r = MultiVec::basis(n, 0);
    for (auto& X : fs) r = wedge(r, MultiVec(X));
    return r;
}

} // namespace

MultiVec schouten(const MultiVec& A, const MultiVec& B) {
    if (A.dim() != B.dim()) throw ContextMismatch("Schouten bracket across patches");
    if (A.degree() < 1 || B.degree() < 1) throw std::invalid_argument("Schouten bracket implemented for multivector degrees >= 1");
    int n = A.dim();
    MultiVec r(n, A.degree() + B.degree() - 1);
    for (auto& [ma, fa] : A.comps())
        for (auto& [mb, fb] : B.comps()) {
            auto xs = decompose(n, ma, fa);
            auto ys = decompose(n, mb, fb);
            for (std::size_t i = 0; i < xs.size(); ++i)
                for (std::size_t j = 0; j < ys.size(); ++j) {
                    VField br = lie_bracket(xs[i], ys[j]);
                    if (br.is_zero()) continue;
                    std::vector<VField> fs{br};
                    for (std::size_t k = 0; k < xs.size(); ++k)
                        if (k != i) fs.push_back(xs[k]);
                    for (std::size_t k = 0; k < ys.size(); ++k)
                        if (k != j) fs.push_back(ys[k]);
                    MultiVec t = wedge_all(n, fs);
                    if ((i + j) % 2) t = -t;
                    r += t;
                }
        }
    return r;
}

Form pullback(const Form& a, const std::vector<Poly>& phi) {
    if (static_cast<int>(phi.size()) != a.dim()) throw ContextMismatch("pullback needs one polynomial per variable");
    int n = a.dim();
    std::vector<Form> dphi;
    for (auto& f : phi) dphi.push_back(d(Form::scalar(f)));
    Form r(n, a.degree());
    for (auto& [m, f] : a.comps()) {
        Form t = Form::scalar(compose(f, phi));
        for (int i : mask_axes(m)) t = wedge(t, dphi[i]);
        r += t;
    }
    return r;
}

VField pullback(const VField& X0, const std::vector<Poly>& phi, const std::vector<Poly>& phi_inv) {
    int n = X0.dim();
    if (static_cast<int>(phi.size()) != n || static_cast<int>(phi_inv.size()) != n)
        throw ContextMismatch("pullback needs one polynomial per variable");
    std::vector<Poly> x0;
    for (int j = 0; j < n; ++j) x0.push_back(compose(X0[j], phi));
    VField X(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!x0[j].is_zero()) X[i] += compose(phi_inv[i].partial(j), phi) * x0[j];
    return X;
}

} // namespace diracspace
