#pragma once

#include <stdexcept>
#include <string>

namespace antipodal {

// Base for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input is affinely (or linearly) degenerate for the requested operation.
class DegenerateInput : public Error {
 public:
  DegenerateInput(const std::string& what, int affine_dim = -1)
      : Error(what), affine_dim_(affine_dim) {}
  int affine_dim() const { return affine_dim_; }

 private:
  int affine_dim_;
};

// The points are not contained in any open hemisphere.
class NoHemisphere : public Error {
 public:
  using Error::Error;
};

class NotAntipodal : public Error {
 public:
  using Error::Error;
};

// Exact covering radius needs the origin strictly inside the hull.
class OriginNotInterior : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace antipodal
