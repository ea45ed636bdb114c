#ifndef HYPATLAS_LINALG_HPP
#define HYPATLAS_LINALG_HPP

#include <vector>

#include "hypatlas/rational.hpp"

namespace hypatlas {

/// Row-major exact rational matrix.
struct MatQ {
    int rows = 0, cols = 0;
    std::vector<Rat> a;
    MatQ() = default;
    MatQ(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}
    Rat& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Rat& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

struct EliminationResult {
    int rank = 0;
    Rat det;  // meaningful for square input only
};

/// Exact rank (and determinant for square matrices) by fraction-free
/// Bareiss elimination on the denominator-cleared integer matrix.
EliminationResult eliminate(const MatQ& m);

inline int exact_rank(const MatQ& m) { return eliminate(m).rank; }
inline Rat exact_det(const MatQ& m) { return eliminate(m).det; }

}  // namespace hypatlas

#endif
