#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pfs {

/// Broad failure classes. The CLI maps each class to its own exit code.
enum class ErrorKind {
  Usage,        ///< invalid arguments or preconditions
  Exact,        ///< exact-arithmetic contract broken (indicates a bug)
  Numerical,    ///< a numerical search or iteration failed
  Resource,     ///< request exceeds the supported exact ceiling
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), kind_(kind), name_(std::move(name)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

#define PFS_DEFINE_ERROR(Type, Kind)                                  \
  class Type : public Error {                                         \
   public:                                                            \
    explicit Type(const std::string& what) : Error(Kind, #Type, what) {} \
  };

// exact-poly
PFS_DEFINE_ERROR(NonDivisible, ErrorKind::Exact)
PFS_DEFINE_ERROR(ZeroInput, ErrorKind::Usage)
PFS_DEFINE_ERROR(DegreeDrop, ErrorKind::Exact)
PFS_DEFINE_ERROR(NonIntegral, ErrorKind::Exact)
PFS_DEFINE_ERROR(NotAPower, ErrorKind::Exact)

// numerics
PFS_DEFINE_ERROR(Overflow, ErrorKind::Numerical)
PFS_DEFINE_ERROR(NonConvergence, ErrorKind::Numerical)
PFS_DEFINE_ERROR(DimensionTooSmall, ErrorKind::Usage)
PFS_DEFINE_ERROR(ContourTooClose, ErrorKind::Numerical)
PFS_DEFINE_ERROR(NoNearbyCenter, ErrorKind::Numerical)
PFS_DEFINE_ERROR(IncompleteSurvey, ErrorKind::Usage)

// configuration
PFS_DEFINE_ERROR(InvalidArgument, ErrorKind::Usage)
PFS_DEFINE_ERROR(ExactCeiling, ErrorKind::Resource)

#undef PFS_DEFINE_ERROR

/// Root search finished with fewer (or more) distinct roots than the degree
/// count predicts.
class IncompleteEnumeration : public Error {
 public:
  IncompleteEnumeration(std::size_t found, std::size_t expected, const std::string& context)
      : Error(ErrorKind::Numerical, "IncompleteEnumeration",
              context + ": found " + std::to_string(found) + " of " + std::to_string(expected)),
        found_(found),
        expected_(expected) {}

  std::size_t found() const noexcept { return found_; }
  std::size_t expected() const noexcept { return expected_; }

 private:
  std::size_t found_;
  std::size_t expected_;
};

}  // namespace pfs
