#pragma once

#include <stdexcept>
#include <string>

namespace diplab {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Raised by exponential-cost routines asked to run on inputs above their cap.
class SizeLimit : public std::length_error {
 public:
  using std::length_error::length_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two claimed twins carry the same `a` fingerprint.
class FingerprintCollision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedProver : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedLog : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace diplab
