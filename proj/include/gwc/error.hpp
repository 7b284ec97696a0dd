#pragma once

#include <stdexcept>
#include <string>

namespace gwc {

/// Base class of every error raised by the codec and the toy-theory suite.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed data that violates a precondition (shape, range, finiteness).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Configuration cannot be honoured, e.g. a bit budget below the frame header.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// Stream ended early or contains an undecodable codeword.
class CorruptStream : public Error {
 public:
  using Error::Error;
};

/// Magic or version of a stream header is not one this build understands.
class UnsupportedStream : public Error {
 public:
  using Error::Error;
};

/// Rejection sampler hit its iteration cap before landing in the target cell.
class SamplingTimeout : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gwc
