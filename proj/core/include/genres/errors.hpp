#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace genres {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The iterative SVD kernel did not converge.
class FactorizationFailure : public Error {
 public:
  using Error::Error;
};

/// A square system was singular relative to the rank cutoff.
class SingularSystem : public Error {
 public:
  SingularSystem(const std::string& what, double condition_estimate)
      : Error(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// Non-finite entries or an otherwise malformed argument.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A matrix offered as a generalized inverse failed the inner or outer axiom.
class InvalidGenInverse : public Error {
 public:
  InvalidGenInverse(const std::string& what, double inner_residual,
                    double outer_residual)
      : Error(what), inner_residual_(inner_residual),
        outer_residual_(outer_residual) {}
  double inner_residual() const noexcept { return inner_residual_; }
  double outer_residual() const noexcept { return outer_residual_; }

 private:
  double inner_residual_;
  double outer_residual_;
};

/// One of the two direct sums X = N(T) + E, Y = R(T) + F does not hold.
class InvalidComplement : public Error {
 public:
  enum class Side { Domain, Codomain };
  InvalidComplement(const std::string& what, Side side)
      : Error(what), side_(side) {}
  Side side() const noexcept { return side_; }

 private:
  Side side_;
};

/// ‖T⁺‖·‖T̄ − T‖ is not below one.
class PerturbationTooLarge : public Error {
 public:
  PerturbationTooLarge(const std::string& what, double smallness)
      : Error(what), smallness_(smallness) {}
  double smallness() const noexcept { return smallness_; }

 private:
  double smallness_;
};

/// |λ|·‖ST⁺‖ is not below one, so the resolvent formula is undefined.
class OutOfRadius : public Error {
 public:
  OutOfRadius(const std::string& what, double scaled_modulus)
      : Error(what), scaled_modulus_(scaled_modulus) {}
  double scaled_modulus() const noexcept { return scaled_modulus_; }

 private:
  double scaled_modulus_;
};

/// A member of a caller-supplied inverse family is not a generalized inverse.
class InvalidFamily : public Error {
 public:
  InvalidFamily(const std::string& what, std::complex<double> lambda)
      : Error(what), lambda_(lambda) {}
  std::complex<double> lambda() const noexcept { return lambda_; }

 private:
  std::complex<double> lambda_;
};

/// Two computations that must agree did not. Always a bug signal.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace genres
