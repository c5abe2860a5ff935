#pragma once

#include <stdexcept>
#include <string>

namespace otcss {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameter or input outside its documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidCovariance : public Error {
 public:
  using Error::Error;
};

class NotPureState : public Error {
 public:
  using Error::Error;
};

// Squeezing condition evaluated where it has no meaning (lambda == 0).
class UndefinedCondition : public Error {
 public:
  using Error::Error;
};

class QuadratureDomainError : public Error {
 public:
  using Error::Error;
};

class DisplacementTooLarge : public Error {
 public:
  using Error::Error;
};

// Truncated Fock space lost more probability than allowed.
class CutoffTooSmall : public Error {
 public:
  CutoffTooSmall(int cutoff, double deficit)
      : Error("Fock cutoff " + std::to_string(cutoff) + " too small: norm deficit " +
              std::to_string(deficit)),
        cutoff_(cutoff),
        deficit_(deficit) {}

  int cutoff() const noexcept { return cutoff_; }
  double deficit() const noexcept { return deficit_; }

 private:
  int cutoff_;
  double deficit_;
};

}  // namespace otcss
