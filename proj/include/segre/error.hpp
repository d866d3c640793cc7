#pragma once

#include <stdexcept>
#include <string>

namespace segre {

/// Base of every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotSimple : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

/// A randomized step hit a measure-zero configuration; the caller resamples.
class Degenerate : public Error {
 public:
  using Error::Error;
};

class Inconsistent : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class RetryExhausted : public Error {
 public:
  using Error::Error;
};

class TrivialShape : public Error {
 public:
  using Error::Error;
};

/// Two sheets meet in more than a ray, which no pair of sheets can do.
class Malformed : public Error {
 public:
  using Error::Error;
};

class MembershipViolated : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class RankViolation : public Error {
 public:
  using Error::Error;
};

class SheetNotPreserved : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace segre
