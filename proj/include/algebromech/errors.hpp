#pragma once

#include <stdexcept>
#include <string>

namespace algebromech {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments: dimension mismatch, invalid sizes, out-of-range parameters.
class InputError : public Error {
public:
  using Error::Error;
};

/// A model failed its defining identities at construction time.
class ConstructionError : public Error {
public:
  using Error::Error;
};

/// Degenerate Legendre transform or a singular linear solve.
class RegularityError : public Error {
public:
  using Error::Error;
};

/// Newton iteration did not converge.
class SolveError : public Error {
public:
  using Error::Error;
};

/// A morphism is not invertible where invertibility is required.
class MorphismError : public Error {
public:
  using Error::Error;
};

/// The flow left the declared validity box of the coordinate chart.
class ChartExitError : public Error {
public:
  ChartExitError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

private:
  double time_;
};

}  // namespace algebromech
