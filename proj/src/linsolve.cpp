#include "camorph/linsolve.hpp"

#include <stdexcept>

namespace camorph {

std::vector<QuadNum> solve_linear(std::vector<QuadNum> a, std::vector<QuadNum> b) {
    const std::size_t m = b.size();
    if (a.size() != m * m) throw std::invalid_argument("solve_linear: shape mismatch");
    auto at = [&](std::size_t i, std::size_t j) -> QuadNum& { return a[i * m + j]; };

    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        while (piv < m && at(piv, col).is_zero()) ++piv;
        if (piv == m) throw std::domain_error("solve_linear: singular matrix");
        if (piv != col) {
            for (std::size_t j = col; j < m; ++j) std::swap(at(piv, j), at(col, j));
            std::swap(b[piv], b[col]);
        }
        QuadNum inv = at(col, col).inverse();
        for (std::size_t j = col; j < m; ++j) at(col, j) *= inv;
        b[col] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == col || at(i, col).is_zero()) continue;
            QuadNum f = at(i, col);
            for (std::size_t j = col; j < m; ++j) at(i, j) -= f * at(col, j);
            b[i] -= f * b[col];
        }
    }
    return b;
}

}  // namespace camorph
