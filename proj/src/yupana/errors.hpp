#pragma once

#include <stdexcept>
#include <string>

namespace yupana {

// Every failure raised by the core derives from Error; the C API maps each
// subclass onto one status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// A value or a token deposit does not fit on the board.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class NotSimpleError : public Error {
 public:
  using Error::Error;
};

// The tokens a match was bound to are no longer on the board.
class StaleMatchError : public Error {
 public:
  using Error::Error;
};

class ConflictError : public Error {
 public:
  using Error::Error;
};

class CycleError : public Error {
 public:
  using Error::Error;
};

class NoMatchError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace yupana
