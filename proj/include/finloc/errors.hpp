#pragma once

#include <stdexcept>
#include <string>

namespace finloc {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotAPoset : Error {
  using Error::Error;
};
struct NotALattice : Error {
  using Error::Error;
};
struct NotAFrame : Error {
  using Error::Error;
};
struct NotLocalic : Error {
  using Error::Error;
};
struct ShapeMismatch : Error {
  using Error::Error;
};
struct UnknownElement : Error {
  using Error::Error;
};
struct UnknownObject : Error {
  using Error::Error;
};
struct SizeGuardExceeded : Error {
  using Error::Error;
};
struct AssocViolation : Error {
  using Error::Error;
};
struct IdentityViolation : Error {
  using Error::Error;
};
struct FunctorLawViolation : Error {
  using Error::Error;
};
struct NotColimiting : Error {
  using Error::Error;
};
struct NotStronglyHausdorff : Error {
  using Error::Error;
};
struct NotIdempotent : Error {
  using Error::Error;
};
struct MissingProducts : Error {
  using Error::Error;
};
struct MissingColimit : Error {
  using Error::Error;
};
struct NotCloseable : Error {
  using Error::Error;
};
struct UniverseTooSmall : Error {
  using Error::Error;
};
struct NotATopology : Error {
  using Error::Error;
};
struct InternalInvariantBroken : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace finloc
