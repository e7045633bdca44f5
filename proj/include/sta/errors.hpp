#pragma once

#include <stdexcept>
#include <string>

namespace sta {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed design input: empty or non-positive frequency list, t_f <= 0, N out of range.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// Bad argument to an evaluation routine (e.g. a non-positive probe frequency).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The auxiliary shape violates its contract (zero normalization integral, non-vanishing mean).
class DegenerateShape : public Error {
 public:
  using Error::Error;
};

/// Post-construction verification failed; usually coefficient overflow at large N.
class InternalConsistency : public Error {
 public:
  using Error::Error;
};

/// Spatial grid cannot represent the wave packet.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Wave function reached the periodic boundary of the grid.
class BoundaryLeak : public Error {
 public:
  using Error::Error;
};

}  // namespace sta
