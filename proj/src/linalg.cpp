#include "koebe/linalg.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cmath>
#include <string>
#include <utility>

#include "koebe/error.hpp"

namespace koebe {

namespace {

void eliminate_rows(std::vector<double>& a, std::vector<double>& b, int n, int k, int row_begin, int row_end) {
    const double* pivot_row = a.data() + static_cast<std::size_t>(k) * n;
    const double pivot = pivot_row[k];
    for (int i = row_begin; i < row_end; ++i) {
        double* row = a.data() + static_cast<std::size_t>(i) * n;
        const double f = row[k] / pivot;
        if (f == 0.0) continue;
        row[k] = 0.0;
        for (int j = k + 1; j < n; ++j) row[j] -= f * pivot_row[j];
        b[i] -= f * b[k];
    }
}

}  // namespace

std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b, int n, Exec exec) {
    if (static_cast<long long>(a.size()) != static_cast<long long>(n) * n || static_cast<int>(b.size()) != n)
        fail(Errc::InvalidInput, "matrix dimensions do not match");
    double scale = 0.0;
    for (double x : a) scale = std::max(scale, std::abs(x));
    const double tiny = scale * 1e-14 + 1e-300;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a[static_cast<std::size_t>(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            double v = std::abs(a[static_cast<std::size_t>(i) * n + k]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best <= tiny) fail(Errc::SingularSystem, "zero pivot in column " + std::to_string(k), k);
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a[static_cast<std::size_t>(k) * n + j], a[static_cast<std::size_t>(p) * n + j]);
            std::swap(b[k], b[p]);
        }
        if (exec == Exec::parallel && n - k > 64) {
#pragma omp parallel for schedule(static)
            for (int i = k + 1; i < n; ++i) eliminate_rows(a, b, n, k, i, i + 1);
        } else {
            eliminate_rows(a, b, n, k, k + 1, n);
        }
    }
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        const double* row = a.data() + static_cast<std::size_t>(i) * n;
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= row[j] * x[j];
        x[i] = s / row[i];
    }
    return x;
}

std::vector<double> solve_sparse(int n, const std::vector<Triplet>& entries, const std::vector<double>& rhs, bool symmetric,
                                 Exec exec) {
    if (static_cast<int>(rhs.size()) != n) fail(Errc::InvalidInput, "right-hand side has wrong size");
    if (n == 0) return {};
    if (n <= kDenseLimit) {
        std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
        for (const auto& t : entries) a[static_cast<std::size_t>(t.row) * n + t.col] += t.value;
        return solve_dense(std::move(a), rhs, n, exec);
    }
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(entries.size());
    for (const auto& t : entries) trip.emplace_back(t.row, t.col, t.value);
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    m.makeCompressed();
    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), n);
    Eigen::VectorXd x;
    if (symmetric) {
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(m);
        if (solver.info() != Eigen::Success) fail(Errc::SingularSystem, "sparse factorization failed");
        x = solver.solve(b);
        // One step of iterative refinement keeps the residual near machine precision.
        Eigen::VectorXd r = b - m * x;
        x += solver.solve(r);
    } else {
        Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
        solver.analyzePattern(m);
        solver.factorize(m);
        if (solver.info() != Eigen::Success) fail(Errc::SingularSystem, "sparse factorization failed");
        x = solver.solve(b);
        Eigen::VectorXd r = b - m * x;
        x += solver.solve(r);
    }
    return std::vector<double>(x.data(), x.data() + n);
}

}  // namespace koebe
