#include "hypatlas/linalg.hpp"

#include <stdexcept>

namespace hypatlas {

// Bareiss fraction-free elimination over the integers after clearing row
// denominators; determinant is recovered from the row scale factors.
EliminationResult eliminate(const MatQ& m) {
    const int rows = m.rows, cols = m.cols;
    std::vector<Int> a(static_cast<size_t>(rows) * cols);
    Rat det_scale(1);
    for (int r = 0; r < rows; ++r) {
        Int lcm = 1;
        for (int c = 0; c < cols; ++c)
            lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(m.at(r, c)));
        det_scale /= Rat(lcm);
        for (int c = 0; c < cols; ++c) {
            const Rat v = m.at(r, c) * Rat(lcm);
            a[static_cast<size_t>(r) * cols + c] = boost::multiprecision::numerator(v);
        }
    }
    auto at = [&](int r, int c) -> Int& { return a[static_cast<size_t>(r) * cols + c]; };

    int rank = 0;
    int sign = 1;
    Int prev = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (!at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank) {
            for (int c = 0; c < cols; ++c) std::swap(at(pivot, c), at(rank, c));
            sign = -sign;
        }
        for (int r = rank + 1; r < rows; ++r) {
            for (int c = col + 1; c < cols; ++c) {
                Int q, rem;
                boost::multiprecision::divide_qr(at(rank, col) * at(r, c) - at(r, col) * at(rank, c), prev, q, rem);
                if (!rem.is_zero()) throw std::logic_error("eliminate: fraction-free step not exact");
                at(r, c) = q;
            }
            at(r, col) = 0;
        }
        prev = at(rank, col);
        ++rank;
    }

    EliminationResult res;
    res.rank = rank;
    if (rows == cols) {
        if (rank < rows)
            res.det = Rat(0);
        else
            res.det = Rat(sign * prev) * det_scale;  // Bareiss: last pivot is the integer determinant
    }
    return res;
}

}  // namespace hypatlas
