#ifndef PTNORM_ERRORS_HPP
#define PTNORM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ptnorm {

/// Base class for all ptnorm exceptions.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: a constructor or command rejected parameters. The message
/// names the violated inequality.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Gamma function evaluated at zero or a negative integer.
class PoleError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A three-term recurrence coefficient denominator vanished; the requested
/// (n, lambda, mu) lie outside the supported parameter range.
class DegenerateRecurrence : public Error {
public:
    using Error::Error;
};

/// Quantum number n exceeds the family's n_max for the given quasi-parity.
class LabelOutOfRange : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Normalized evaluation requested but the state's |N| has not been
/// resolved (analytically or numerically).
class UnresolvedNorm : public Error {
public:
    using Error::Error;
};

/// Parameters lie outside the closed-form normalization window.
class NormInvalid : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Scarf II q = -1: A falls outside every sign window (B-1/2+2k, B+1/2+2k).
class SignViolation : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Adaptive quadrature exhausted its evaluation budget before reaching the
/// requested error target.
class NoConvergence : public Error {
public:
    using Error::Error;
};

/// The integrand failed the decay pre-scan; the integral does not converge
/// for these parameters.
class Divergent : public Error {
public:
    using Error::Error;
};

/// Measured sign of a raw pseudo-norm differs from the state's quasi-parity.
class SignMismatch : public Error {
public:
    using Error::Error;
};

/// Raw pseudo-norm has a non-negligible imaginary part.
class NonRealNorm : public Error {
public:
    using Error::Error;
};

/// Two grid wavefunctions do not share a grid or time stamps.
class GridMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Time evolution amplitude grew beyond the stability bound.
class BlowUp : public Error {
public:
    BlowUp(const std::string& msg, long step_index)
        : Error(msg), step(step_index) {}
    long step;
};

/// gram() entry failure, annotated with the entry indices.
class GramEntryError : public Error {
public:
    GramEntryError(const std::string& msg, int row_index, int col_index)
        : Error(msg), row(row_index), col(col_index) {}
    int row;
    int col;
};

}  // namespace ptnorm

#endif  // PTNORM_ERRORS_HPP
