#pragma once

#include <stdexcept>
#include <string>

namespace nisqtopo {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The band gap is (numerically) closed at the requested momentum.
class GapClosed : public Error {
public:
  using Error::Error;
};

/// A gate kind that the requested operation cannot handle.
class UnsupportedGate : public Error {
public:
  using Error::Error;
};

/// A composite gate reached the noisy simulator without being transpiled.
class UntranspiledCircuit : public Error {
public:
  using Error::Error;
};

/// A link overlap fell below the modulus floor, so its phase is meaningless.
class DegenerateLink : public Error {
public:
  using Error::Error;
};

/// A lattice sum that should be an integer is not close to one.
class NotQuantized : public Error {
public:
  using Error::Error;
};

/// A phase increment is too close to the branch cut to count windings.
class AmbiguousWinding : public Error {
public:
  using Error::Error;
};

/// Invalid experiment configuration (bad flag values, malformed files).
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace nisqtopo
