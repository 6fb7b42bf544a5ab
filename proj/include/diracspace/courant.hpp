#pragma once

#include "diracspace/forms.hpp"

#include <optional>
#include <string>

namespace diracspace {

struct DegreeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// X + alpha in Gamma(T + wedge^p T*).
struct SectionEp {
    int p = 1;
    VField X;
    Form alpha;

    SectionEp() = default;
    SectionEp(VField x, Form a);
    static SectionEp zero(int n, int p);
    static SectionEp vector(const VField& x, int p);
    static SectionEp form(const Form& a);

    int dim() const { return X.dim(); }
    bool is_zero() const { return X.is_zero() && alpha.is_zero(); }

    SectionEp operator-() const { return SectionEp(-X, -alpha); }
    SectionEp& operator+=(const SectionEp& o);
    SectionEp& operator-=(const SectionEp& o);
    friend SectionEp operator+(SectionEp a, const SectionEp& b) { return a += b; }
    friend SectionEp operator-(SectionEp a, const SectionEp& b) { return a -= b; }
    friend SectionEp operator*(const Rat& c, const SectionEp& e) { return SectionEp(e.X * c, e.alpha * c); }
    friend SectionEp operator*(const Poly& f, const SectionEp& e) { return SectionEp(f * e.X, f * e.alpha); }
    friend bool operator==(const SectionEp& a, const SectionEp& b) {
        return a.p == b.p && a.X == b.X && a.alpha == b.alpha;
    }

    std::string str() const;
};

// (Y, eta) in Gamma(wedge^r T + wedge^{p+1-r} T*).
struct SectionPr {
    int p = 1;
    int r = 1;
    MultiVec Y;
    Form eta;

    SectionPr() = default;
    SectionPr(int p, MultiVec y, Form e);
    static SectionPr from_ep(const SectionEp& e);
    SectionEp to_ep() const;
    bool is_zero() const { return Y.is_zero() && eta.is_zero(); }
    friend bool operator==(const SectionPr& a, const SectionPr& b) {
        return a.p == b.p && a.r == b.r && a.Y == b.Y && a.eta == b.eta;
    }
    SectionPr& operator+=(const SectionPr& o);
    friend SectionPr operator+(SectionPr a, const SectionPr& b) { return a += b; }
    friend SectionPr operator-(const SectionPr& a, const SectionPr& b);
};

// <X+a, Y+b> = i_X b + i_Y a
Form pairing(const SectionEp& e1, const SectionEp& e2);
// [X,Y] + L_X b - i_Y da (+ i_Y i_X H)
SectionEp dorfman(const SectionEp& e1, const SectionEp& e2, const std::optional<Form>& H = std::nullopt);
// dorfman - 1/2 d<e1,e2>
SectionEp courant(const SectionEp& e1, const SectionEp& e2, const std::optional<Form>& H = std::nullopt);
// X + a + sign * i_X B
SectionEp gauge(const SectionEp& e, const Form& B, int sign);
// X + lambda a
SectionEp scale(const SectionEp& e, const Rat& lambda);

// Lie derivative along a multivector of degree q: i_Y d - (-1)^q d i_Y.
Form lie_derivative(const MultiVec& Y, const Form& a);
// 1/2 (i_Ybar eta - (-1)^{rs} i_Y etabar)
Form multi_pairing(const SectionPr& a, const SectionPr& b);
// (e[Y,Ybar], L_Y etabar - e L_Ybar eta + (-1)^{r(s+1)}/2 d(i_Ybar eta + (-1)^{rs} i_Y etabar)), e = (-1)^{(r-1)(s-1)}
SectionPr multi_bracket(const SectionPr& a, const SectionPr& b);

} // namespace diracspace
