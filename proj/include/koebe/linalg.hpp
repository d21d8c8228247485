#pragma once

#include <vector>

namespace koebe {

enum class Exec { serial, parallel };

// Dense Gaussian elimination with partial pivoting on a row-major n×n matrix.
// Both variants perform identical arithmetic; the parallel one splits the row
// updates of each elimination step across threads.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b, int n, Exec exec = Exec::parallel);

struct Triplet {
    int row;
    int col;
    double value;
};

// Systems up to this size go through the dense solver.
inline constexpr int kDenseLimit = 400;

// Solves a sparse square system given by triplets (duplicates are summed).
// `symmetric` selects a Cholesky-type factorization for the sparse path.
std::vector<double> solve_sparse(int n, const std::vector<Triplet>& entries, const std::vector<double>& rhs, bool symmetric,
                                 Exec exec = Exec::parallel);

}  // namespace koebe
