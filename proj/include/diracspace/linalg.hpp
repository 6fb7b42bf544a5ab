#pragma once

#include "diracspace/rat.hpp"

#include <optional>
#include <vector>

namespace diracspace {

using RatVec = std::vector<Rat>;

// Dense rational matrix, row-major.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
    static RatMatrix from_rows(const std::vector<RatVec>& rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Rat& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    RatVec row(int i) const;
    RatVec apply(const RatVec& v) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

struct Echelon {
    RatMatrix m;              // reduced row echelon form; zero rows dropped
    std::vector<int> pivots;  // pivot column of each row
};

Echelon rref(const RatMatrix& a);
int rank(const RatMatrix& a);
// Basis of {v : a v = 0}, one vector per free column (free variable set to 1).
std::vector<RatVec> kernel(const RatMatrix& a);
// Some solution of a v = b (free variables zero), or nothing.
std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b);
// Canonical basis (nonzero RREF rows) of the span of the given vectors.
std::vector<RatVec> span_basis(const std::vector<RatVec>& vs, int dim);
bool in_span(const std::vector<RatVec>& basis, const RatVec& v);
bool is_zero(const RatVec& v);

} // namespace diracspace
