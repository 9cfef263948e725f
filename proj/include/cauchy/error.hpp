#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cauchy
{

enum class ErrorCode
{
  InvalidArgument,
  NotPositiveDefinite,
  NonConvergence,
  SingularF,
  NewtonDivergence,
  NearSingular,
  CgNonConvergence,
  CflViolation,
  LeftDomain,
  NonFiniteVelocity,
  NoRichterForm,
  ParseError,
  UnknownKey,
  MissingRequired,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. Every failure path carries one of the codes above.
class Error : public std::runtime_error
{
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cauchy
