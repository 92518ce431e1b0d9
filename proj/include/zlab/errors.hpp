#pragma once

#include <stdexcept>
#include <string>

namespace zlab {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// A leading principal minor fell below threshold during LDU factorization.
/// `index()` is 1-based: the k-th leading minor.
class SingularMinor : public Error {
 public:
  explicit SingularMinor(int k)
      : Error("leading principal minor " + std::to_string(k) + " is numerically zero"), k_(k) {}
  int index() const noexcept { return k_; }

 private:
  int k_;
};

class UnsupportedRank : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised when a value violates the invariant of the type it is being wrapped in.
class InvalidElement : public Error {
 public:
  using Error::Error;
};

class NotInTorus : public Error {
 public:
  using Error::Error;
};

class NotInXiPlusB : public Error {
 public:
  using Error::Error;
};

/// The point is outside the open set where the chamber representative exists.
class NotInV : public Error {
 public:
  using Error::Error;
};

/// The group element is outside w0·U₋·T·U. Carries the failing minor (1-based).
class NotInGStar : public Error {
 public:
  explicit NotInGStar(int minor)
      : Error("element not in the translated big cell (minor " + std::to_string(minor) + ")"),
        minor_(minor) {}
  int minor() const noexcept { return minor_; }

 private:
  int minor_;
};

class NotCentralizing : public Error {
 public:
  using Error::Error;
};

class NotInW : public Error {
 public:
  using Error::Error;
};

}  // namespace zlab
