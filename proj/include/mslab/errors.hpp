#pragma once

#include <stdexcept>
#include <string>

namespace mslab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TangentialCrossing : Error {
  explicit TangentialCrossing(const std::string& what) : Error(what) {}
};

struct EmptySet : Error {
  explicit EmptySet(const std::string& what) : Error(what) {}
};

struct EmptyIntersection : Error {
  explicit EmptyIntersection(const std::string& what) : Error(what) {}
};

struct OnJumpSet : Error {
  explicit OnJumpSet(const std::string& what) : Error(what) {}
};

struct OutOfDomain : Error {
  explicit OutOfDomain(const std::string& what) : Error(what) {}
};

struct NotAJumpArc : Error {
  explicit NotAJumpArc(const std::string& what) : Error(what) {}
};

struct WrongCrossingCount : Error {
  explicit WrongCrossingCount(int n)
      : Error("expected exactly one circle crossing, found " + std::to_string(n)), count(n) {}
  int count;
};

struct TooCloseToK : Error {
  explicit TooCloseToK(const std::string& what) : Error(what) {}
};

struct GridMismatch : Error {
  explicit GridMismatch(const std::string& what) : Error(what) {}
};

struct NotOdd : Error {
  explicit NotOdd(const std::string& what) : Error(what) {}
};

struct BracketFailure : Error {
  explicit BracketFailure(const std::string& what) : Error(what) {}
};

struct NonmonotoneEnergy : Error {
  explicit NonmonotoneEnergy(const std::string& what) : Error(what) {}
};

struct DomainTooSmall : Error {
  explicit DomainTooSmall(const std::string& what) : Error(what) {}
};

}  // namespace mslab
