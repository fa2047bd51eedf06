#pragma once

#include <stdexcept>
#include <string>

namespace ftk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define FTK_DEFINE_ERROR(Name)                                                \
  struct Name : Error {                                                       \
    explicit Name(const std::string& what) : Error(what) {}                   \
  }

FTK_DEFINE_ERROR(DimensionMismatch);
FTK_DEFINE_ERROR(NotHermitian);
FTK_DEFINE_ERROR(NotPSD);
FTK_DEFINE_ERROR(NoConvergence);
FTK_DEFINE_ERROR(NotContraction);
FTK_DEFINE_ERROR(NotQuasiIsometry);
FTK_DEFINE_ERROR(NotTwoIsometry);
FTK_DEFINE_ERROR(NotInvariant);
FTK_DEFINE_ERROR(SpanMismatch);
FTK_DEFINE_ERROR(ZeroOperator);
FTK_DEFINE_ERROR(ConditionFails);
FTK_DEFINE_ERROR(TheoremViolation);
FTK_DEFINE_ERROR(GenerationFailed);
FTK_DEFINE_ERROR(ParseError);
FTK_DEFINE_ERROR(UnknownSuite);

#undef FTK_DEFINE_ERROR

} // namespace ftk
