#include "diracspace/courant.hpp"

namespace diracspace {

SectionEp::SectionEp(VField x, Form a) : p(a.degree()), X(std::move(x)), alpha(std::move(a)) {
    if (X.dim() != alpha.dim()) throw ContextMismatch("vector and form parts on different patches");
    if (p < 1) throw DegreeError("section form part must have degree p >= 1");
}

SectionEp SectionEp::zero(int n, int p) { return SectionEp(VField(n), Form(n, p)); }
SectionEp SectionEp::vector(const VField& x, int p) { return SectionEp(x, Form(x.dim(), p)); }
SectionEp SectionEp::form(const Form& a) { return SectionEp(VField(a.dim()), a); }

SectionEp& SectionEp::operator+=(const SectionEp& o) {
    if (p != o.p) throw DegreeError("adding sections of different order");
    X += o.X;
    alpha += o.alpha;
    return *this;
}

SectionEp& SectionEp::operator-=(const SectionEp& o) {
    if (p != o.p) throw DegreeError("adding sections of different order");
    X -= o.X;
    alpha -= o.alpha;
    return *this;
}

std::string SectionEp::str() const {
    if (X.is_zero() && alpha.is_zero()) return "0";
    if (X.is_zero()) return alpha.str();
    if (alpha.is_zero()) return X.str();
    std::string a = alpha.str();
    if (a[0] == '-') return X.str() + " - " + a.substr(1);
    return X.str() + " + " + a;
}

SectionPr::SectionPr(int p_, MultiVec y, Form e) : p(p_), r(y.degree()), Y(std::move(y)), eta(std::move(e)) {
    if (r < 1 || r > p) throw DegreeError("tier must satisfy 1 <= r <= p");
    if (eta.degree() != p + 1 - r) throw DegreeError("form part of a tier-r section must have degree p+1-r");
    if (Y.dim() != eta.dim()) throw ContextMismatch("multivector and form parts on different patches");
}

SectionPr SectionPr::from_ep(const SectionEp& e) { return SectionPr(e.p, MultiVec(e.X), e.alpha); }

SectionEp SectionPr::to_ep() const {
    if (r != 1) throw DegreeError("only tier-1 sections are sections of E^p");
    return SectionEp(Y.to_vfield(), eta);
}

SectionPr& SectionPr::operator+=(const SectionPr& o) {
    if (p != o.p || r != o.r) throw DegreeError("adding sections of different tier");
    Y += o.Y;
    eta += o.eta;
    return *this;
}

SectionPr operator-(const SectionPr& a, const SectionPr& b) {
    return SectionPr(a.p, a.Y - b.Y, a.eta - b.eta);
}

namespace {

void same_order(const SectionEp& a, const SectionEp& b) {
    if (a.p != b.p) throw DegreeError("sections of different order p");
    if (a.dim() != b.dim()) throw ContextMismatch("sections on different patches");
}

} // namespace

Form pairing(const SectionEp& e1, const SectionEp& e2) {
    same_order(e1, e2);
    return interior(e1.X, e2.alpha) + interior(e2.X, e1.alpha);
}

SectionEp dorfman(const SectionEp& e1, const SectionEp& e2, const std::optional<Form>& H) {
    same_order(e1, e2);
    Form a = lie_derivative(e1.X, e2.alpha) - interior(e2.X, d(e1.alpha));
    if (H) {
        if (H->degree() != e1.p + 2) throw DegreeError("twisting form must have degree p+2");
        a += interior(e2.X, interior(e1.X, *H));
    }
    return SectionEp(lie_bracket(e1.X, e2.X), a);
}

SectionEp courant(const SectionEp& e1, const SectionEp& e2, const std::optional<Form>& H) {
    SectionEp r = dorfman(e1, e2, H);
    r.alpha -= d(pairing(e1, e2)) * Rat(1, 2);
    return r;
}

SectionEp gauge(const SectionEp& e, const Form& B, int sign) {
    if (B.degree() != e.p + 1) throw DegreeError("gauge form must have degree p+1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("gauge sign must be +1 or -1");
    return SectionEp(e.X, e.alpha + interior(e.X, B) * Rat(sign));
}

SectionEp scale(const SectionEp& e, const Rat& lambda) {
    if (lambda.is_zero()) throw std::invalid_argument("scaling factor must be nonzero");
    return SectionEp(e.X, e.alpha * lambda);
}

Form lie_derivative(const MultiVec& Y, const Form& a) {
    Form r = contract(Y, d(a));
    Form t = d(contract(Y, a));
    if (Y.degree() % 2) r += t;
    else r -= t;
    return r;
}

Form multi_pairing(const SectionPr& a, const SectionPr& b) {
    if (a.p != b.p) throw DegreeError("sections of different order p");
    if (a.r + b.r > a.p + 1) throw DegreeError("tier overflow: r+s > p+1");
    Form t = contract(b.Y, a.eta) - contract(a.Y, b.eta) * Rat(sign_pow(a.r * b.r));
    return t * Rat(1, 2);
}

SectionPr multi_bracket(const SectionPr& a, const SectionPr& b) {
    if (a.p != b.p) throw DegreeError("sections of different order p");
    int r = a.r, s = b.r;
    if (r + s - 1 > a.p) throw DegreeError("tier overflow: r+s-1 > p");
    int eps = sign_pow((r - 1) * (s - 1));
    MultiVec Y = schouten(a.Y, b.Y) * Rat(eps);
    Form eta = lie_derivative(a.Y, b.eta) - lie_derivative(b.Y, a.eta) * Rat(eps);
    Form inner = contract(b.Y, a.eta) + contract(a.Y, b.eta) * Rat(sign_pow(r * s));
    eta += d(inner) * Rat(sign_pow(r * (s + 1)), 2);
    return SectionPr(a.p, Y, eta);
}

} // namespace diracspace
