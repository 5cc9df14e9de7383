#pragma once

#include <stdexcept>
#include <string>

namespace hslab {

// Base class for every failure this library raises on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};

// Quadrature / iteration did not reach the requested tolerance.
struct NonConvergence : Error {
  using Error::Error;
};

struct BadBracket : Error {
  using Error::Error;
};

struct StepFailure : Error {
  using Error::Error;
};

struct DivergentSeries : Error {
  using Error::Error;
};

struct MatchFailure : Error {
  using Error::Error;
};

struct CacheRange : Error {
  using Error::Error;
};

struct SignError : Error {
  using Error::Error;
};

struct VarianceBlowup : Error {
  using Error::Error;
};

struct InconclusiveMC : Error {
  using Error::Error;
};

struct NoPositiveAlpha : Error {
  using Error::Error;
};

}  // namespace hslab
