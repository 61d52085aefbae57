#pragma once

#include <stdexcept>
#include <string>

namespace cogrip {

// Base of every error raised by the library. Out-of-range coordinates use
// std::out_of_range directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A task, board or piece violates a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Task generation could not satisfy its constraints within budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Out-of-vocabulary word or malformed token sequence.
class EncodingError : public Error {
 public:
  using Error::Error;
};

// An id (piece, action) does not refer to anything known.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Episode or session API used out of order (e.g. stepping a finished episode).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A remote agent went away mid-episode.
class AgentDisconnected : public Error {
 public:
  using Error::Error;
};

}  // namespace cogrip
