#pragma once

#include <stdexcept>
#include <string>

namespace antictx {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ANTICTX_DEFINE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  };

/// Malformed input document.
ANTICTX_DEFINE_ERROR(ParseError)
ANTICTX_DEFINE_ERROR(UnknownLabelError)
ANTICTX_DEFINE_ERROR(MissingLabelError)
/// A search exceeded its node budget.
ANTICTX_DEFINE_ERROR(ResourceLimitError)
/// The scenario has no value functions, so the classical polytope is empty.
ANTICTX_DEFINE_ERROR(EmptyPolytopeError)
ANTICTX_DEFINE_ERROR(NotAStateError)
ANTICTX_DEFINE_ERROR(DimensionMismatchError)
ANTICTX_DEFINE_ERROR(DuplicateRayError)
/// An overlap falls inside the guard band above the orthogonality cut.
ANTICTX_DEFINE_ERROR(ToleranceAmbiguityError)
ANTICTX_DEFINE_ERROR(NotABasisError)
ANTICTX_DEFINE_ERROR(UnsupportedParameterError)
ANTICTX_DEFINE_ERROR(OutOfRangeError)
ANTICTX_DEFINE_ERROR(ConstraintMismatchError)
/// A documented precondition of an operation does not hold.
ANTICTX_DEFINE_ERROR(PreconditionError)

#undef ANTICTX_DEFINE_ERROR

}  // namespace antictx
