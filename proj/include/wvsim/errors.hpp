#pragma once

#include <stdexcept>

namespace wvsim {

// Base class for numerical failures in the engine. Parameter and input
// validation errors use std::invalid_argument or ConfigError instead, so
// callers can tell a bad request from a computation that broke down.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Pre- and post-selection overlap |<f|i>|^2 is below 1e-14: the weak value
// denominator vanishes and weak-value quantities are undefined.
class OrthogonalSelection : public Error {
public:
    using Error::Error;
};

// All-order post-selection probability |<f|i>|^2 * Z1 is below 1e-14: there
// is no post-selected ensemble to normalize against.
class ZeroPostselection : public Error {
public:
    using Error::Error;
};

// The momentum grid cannot resolve the state: tail mass outside the window,
// spacing too coarse for the kernel oscillation, or refinement hit its cap.
class GridUnderresolved : public Error {
public:
    using Error::Error;
};

// The radicand of a closed-form SNR denominator went negative, so the
// expression as written has no real value at these parameters.
class ImaginaryDenominator : public Error {
public:
    using Error::Error;
};

// Covariance matrix is singular (or the purity metric degenerates), so the
// Gaussian Fisher information formula cannot be evaluated.
class SingularCovariance : public Error {
public:
    using Error::Error;
};

// Too much derivative weight sits on the null space of the density matrix;
// the SLD construction is unreliable there.
class DegenerateSupport : public Error {
public:
    using Error::Error;
};

// A matrix that must be positive semidefinite has negative eigenvalues
// beyond tolerance, so its square root is not defined.
class NonPositiveState : public Error {
public:
    using Error::Error;
};

// Malformed configuration file or inconsistent option set.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace wvsim
