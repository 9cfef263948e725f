#include "cauchy/error.hpp"

namespace cauchy
{

std::string_view to_string(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::SingularF: return "SingularF";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::NearSingular: return "NearSingular";
    case ErrorCode::CgNonConvergence: return "CgNonConvergence";
    case ErrorCode::CflViolation: return "CflViolation";
    case ErrorCode::LeftDomain: return "LeftDomain";
    case ErrorCode::NonFiniteVelocity: return "NonFiniteVelocity";
    case ErrorCode::NoRichterForm: return "NoRichterForm";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::MissingRequired: return "MissingRequired";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace cauchy
