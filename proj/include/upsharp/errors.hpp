#ifndef UPSHARP_ERRORS_HPP
#define UPSHARP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace upsharp {

/// Base of every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (bad dimension, degree, rate...).
class domain_error : public error {
public:
  using error::error;
};

/// An integral that was asked for does not converge at the origin or at infinity.
class divergent_integral : public error {
public:
  using error::error;
};

/// An iterative routine exhausted its budget before meeting its tolerance.
class no_convergence : public error {
public:
  using error::error;
};

/// The requested (functional, form) pair has no closed expression.
class form_unavailable : public error {
public:
  using error::error;
};

/// A sampled profile does not vanish fast enough at the grid start for the weight it meets.
class singular_weight : public error {
public:
  using error::error;
};

/// A quotient denominator is numerically zero.
class degenerate_profile : public error {
public:
  using error::error;
};

/// A discrete infimum scan could not certify its tail.
class inconclusive_scan : public error {
public:
  using error::error;
};

/// A rational formula was evaluated at a pole.
class pole_error : public error {
public:
  using error::error;
};

}  // namespace upsharp

#endif  // UPSHARP_ERRORS_HPP
