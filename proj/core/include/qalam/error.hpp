#pragma once

#include <stdexcept>
#include <string>

namespace qalam {

// Root of every exception thrown by the library. Callers that only need a
// diagnostic can catch this; tests and the CLI catch the concrete kinds.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidImage : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NoContent : public Error {
 public:
  using Error::Error;
};

class UnknownLetter : public Error {
 public:
  using Error::Error;
};

class CorruptDatabase : public Error {
 public:
  using Error::Error;
};

class EmptyDatabase : public Error {
 public:
  using Error::Error;
};

class CursorExhausted : public Error {
 public:
  using Error::Error;
};

class MissingLetter : public Error {
 public:
  using Error::Error;
};

class EmptyCorpus : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qalam
