#pragma once

#include <stdexcept>
#include <string>

namespace sgf {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition (bad parameter, grid
// mismatch, wrong noise dimension, ...).
struct InvalidArgument : Error {
  using Error::Error;
};

// Configuration file could not be parsed or failed validation.
struct ConfigError : Error {
  using Error::Error;
};

// A time step produced a non-finite state.  Carries the time at which
// the integration had to stop.
struct BlowupError : Error {
  BlowupError(double time, const std::string& what) : Error(what), t(time) {}
  double t;
};

// Filesystem / serialization failure.
struct IoError : Error {
  using Error::Error;
};

}  // namespace sgf
