#include "diracspace/linalg.hpp"

#include <stdexcept>

namespace diracspace {

RatMatrix RatMatrix::from_rows(const std::vector<RatVec>& rows, int cols) {
    RatMatrix m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(rows[i].size()) != cols) throw std::invalid_argument("row length mismatch");
        for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RatVec RatMatrix::row(int i) const {
    return RatVec(a_.begin() + static_cast<std::ptrdiff_t>(i) * cols_, a_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_);
}

RatVec RatMatrix::apply(const RatVec& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("vector length mismatch");
    RatVec r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (!(*this)(i, j).is_zero() && !v[j].is_zero()) r[i] += (*this)(i, j) * v[j];
    return r;
}

Echelon rref(const RatMatrix& a) {
    RatMatrix m = a;
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int sel = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m(i, c).is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
        Rat inv = Rat(1) / m(r, c);
        for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            Rat f = m(i, c);
            for (int j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    RatMatrix out(r, m.cols());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return {out, piv};
}

int rank(const RatMatrix& a) { return static_cast<int>(rref(a).pivots.size()); }

std::vector<RatVec> kernel(const RatMatrix& a) {
    Echelon e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int c : e.pivots) is_pivot[c] = true;
    std::vector<RatVec> out;
    for (int f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVec v(a.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.m(static_cast<int>(i), f);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b) {
    if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    Echelon e = rref(aug);
    RatVec x(a.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == a.cols()) return std::nullopt;
        x[e.pivots[i]] = e.m(static_cast<int>(i), a.cols());
    }
    return x;
}

std::vector<RatVec> span_basis(const std::vector<RatVec>& vs, int dim) {
    if (vs.empty()) return {};
    Echelon e = rref(RatMatrix::from_rows(vs, dim));
    std::vector<RatVec> out;
    for (int i = 0; i < e.m.rows(); ++i) out.push_back(e.m.row(i));
    return out;
}

bool in_span(const std::vector<RatVec>& basis, const RatVec& v) {
    if (is_zero(v)) return true;
    if (basis.empty()) return false;
    std::vector<RatVec> all = basis;
    all.push_back(v);
    return static_cast<int>(span_basis(all, static_cast<int>(v.size())).size()) == static_cast<int>(span_basis(basis, static_cast<int>(v.size())).size());
}

bool is_zero(const RatVec& v) {
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

} // namespace diracspace
