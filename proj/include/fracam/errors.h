#pragma once

#include <stdexcept>
#include <string>

namespace fracam {

// Usage errors map to CLI exit code 2, numeric failures to 3.
enum class ErrorKind { Usage, Numeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), m_kind(kind) {}

  ErrorKind kind() const { return m_kind; }

 private:
  ErrorKind m_kind;
};

#define FRACAM_DEFINE_ERROR(Name, Kind)                                    \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  }

FRACAM_DEFINE_ERROR(ConfigError, Usage);
FRACAM_DEFINE_ERROR(ModeError, Usage);
FRACAM_DEFINE_ERROR(BadDimension, Usage);
FRACAM_DEFINE_ERROR(BadGrid, Usage);
FRACAM_DEFINE_ERROR(ParseError, Usage);
FRACAM_DEFINE_ERROR(DomainError, Numeric);
FRACAM_DEFINE_ERROR(ChainOverflow, Numeric);
FRACAM_DEFINE_ERROR(DegeneratePoint, Numeric);
FRACAM_DEFINE_ERROR(SingularMatrix, Numeric);
FRACAM_DEFINE_ERROR(NonConstantBracket, Numeric);
FRACAM_DEFINE_ERROR(ThetaMismatch, Numeric);
FRACAM_DEFINE_ERROR(NonHermitian, Numeric);
FRACAM_DEFINE_ERROR(ConvergenceFailure, Numeric);
FRACAM_DEFINE_ERROR(OriginApproach, Numeric);

#undef FRACAM_DEFINE_ERROR

}  // namespace fracam
