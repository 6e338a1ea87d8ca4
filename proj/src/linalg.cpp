#include "wvsim/linalg.hpp"

#include <stdexcept>
#include <string>

#include "wvsim/errors.hpp"

#ifdef WVSIM_HAVE_LAPACKE
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#endif

namespace wvsim::linalg {

namespace {

constexpr int kMaxDim = 8192;

void check_square(Eigen::Index rows, Eigen::Index cols, const char* where) {
    if (rows != cols) {
        throw std::invalid_argument(std::string(where) + ": matrix must be square");
    }
    if (rows > kMaxDim) {
        throw std::invalid_argument(std::string(where) + ": dimension exceeds supported 8192");
    }
}

[[maybe_unused]] void check_info(int info, const char* routine) {
    if (info != 0) {
        throw Error(std::string(routine) + " failed, info = " + std::to_string(info));
    }
}

}  // namespace

Eigensystem hermitian_eigensystem(const Eigen::MatrixXcd& m) {
    check_square(m.rows(), m.cols(), "hermitian_eigensystem");
    const int n = static_cast<int>(m.rows());
#ifdef WVSIM_HAVE_LAPACKE
    Eigen::MatrixXcd a = m;
    Eigen::VectorXd w(n);
    check_info(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data()), "zheevd");
    return {std::move(w), std::move(a)};
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.info() != Eigen::Success) throw Error("hermitian eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
#endif
}

EigensystemReal symmetric_eigensystem(const Eigen::MatrixXd& m) {
    check_square(m.rows(), m.cols(), "symmetric_eigensystem");
    const int n = static_cast<int>(m.rows());
#ifdef WVSIM_HAVE_LAPACKE
    Eigen::MatrixXd a = m;
    Eigen::VectorXd w(n);
    check_info(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data()), "dsyevd");
    return {std::move(w), std::move(a)};
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw Error("symmetric eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
#endif
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
    check_square(m.rows(), m.cols(), "hermitian_eigenvalues");
    const int n = static_cast<int>(m.rows());
#ifdef WVSIM_HAVE_LAPACKE
    Eigen::MatrixXcd a = m;
    Eigen::VectorXd w(n);
    check_info(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data()), "zheevd");
    return w;
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("hermitian eigensolver failed");
    return es.eigenvalues();
#endif
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
    if (m.rows() > kMaxDim || m.cols() > kMaxDim) {
        throw std::invalid_argument("singular_values: dimension exceeds supported 8192");
    }
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
#ifdef WVSIM_HAVE_LAPACKE
    Eigen::MatrixXcd a = m;
    Eigen::VectorXd s(std::min(rows, cols));
    check_info(LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, a.data(), rows, s.data(),
                              nullptr, 1, nullptr, 1),
               "zgesdd");
    return s;
#else
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues();
#endif
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
    if (m.rows() > kMaxDim || m.cols() > kMaxDim) {
        throw std::invalid_argument("singular_values: dimension exceeds supported 8192");
    }
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
#ifdef WVSIM_HAVE_LAPACKE
    Eigen::MatrixXd a = m;
    Eigen::VectorXd s(std::min(rows, cols));
    check_info(LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, a.data(), rows, s.data(),
                              nullptr, 1, nullptr, 1),
               "dgesdd");
    return s;
#else
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues();
#endif
}

namespace {

// Shared clamp policy for both psd_sqrt overloads: eigenvalues slightly
// negative from roundoff clamp to 0, genuinely negative ones are an error.
Eigen::VectorXd clamped_sqrt(const Eigen::VectorXd& values) {
    const double scale = values.cwiseAbs().maxCoeff();
    if (values.minCoeff() < -1e-10 * scale) {
        throw NonPositiveState("psd_sqrt: eigenvalue below -1e-10 * max");
    }
    return values.cwiseMax(0.0).cwiseSqrt();
}

}  // namespace

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m) {
    auto es = symmetric_eigensystem(m);
    if (es.values.size() == 0 || es.values.cwiseAbs().maxCoeff() == 0.0) {
        return Eigen::MatrixXd::Zero(m.rows(), m.cols());
    }
    return es.vectors * clamped_sqrt(es.values).asDiagonal() * es.vectors.transpose();
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
    auto es = hermitian_eigensystem(m);
    if (es.values.size() == 0 || es.values.cwiseAbs().maxCoeff() == 0.0) {
        return Eigen::MatrixXcd::Zero(m.rows(), m.cols());
    }
    return es.vectors * clamped_sqrt(es.values).asDiagonal() * es.vectors.adjoint();
}

bool is_effectively_real(const Eigen::MatrixXcd& m, double tol_scale) {
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return true;
    return m.imag().cwiseAbs().maxCoeff() <= tol_scale * scale;
}

}  // namespace wvsim::linalg
