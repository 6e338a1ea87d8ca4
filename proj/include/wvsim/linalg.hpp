#pragma once

#include <Eigen/Dense>
#include <complex>

namespace wvsim::linalg {

// Dense Hermitian eigensolves and SVDs sized for kernels up to n = 8192.
// Backed by LAPACK divide-and-conquer when available, Eigen otherwise; the
// real-symmetric overloads are the fast path for kernels with a purely
// imaginary weak value, which are exactly real.

struct Eigensystem {
    Eigen::VectorXd values;    // ascending
    Eigen::MatrixXcd vectors;  // columns match values
};

struct EigensystemReal {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

Eigensystem hermitian_eigensystem(const Eigen::MatrixXcd& m);
EigensystemReal symmetric_eigensystem(const Eigen::MatrixXd& m);
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m);

// Singular values, descending.
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m);
Eigen::VectorXd singular_values(const Eigen::MatrixXd& m);

// Square root of a positive semidefinite matrix. Eigenvalues in
// [-1e-10 * max, 0) clamp to 0; below that throws NonPositiveState.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m);
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m);

// True when max |imag| <= tol_scale * max |entry|, the dispatch test for the
// real-symmetric path.
bool is_effectively_real(const Eigen::MatrixXcd& m, double tol_scale = 1e-15);

}  // namespace wvsim::linalg
