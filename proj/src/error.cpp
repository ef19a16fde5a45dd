#include "unitroot/error.hpp"

namespace unitroot {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CompositeP: return "CompositeP";
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::PrecisionTooLow: return "PrecisionTooLow";
    case ErrorKind::NonUnitDivision: return "NonUnitDivision";
    case ErrorKind::NotSpanning: return "NotSpanning";
    case ErrorKind::OutsideCone: return "OutsideCone";
    case ErrorKind::OutsideM: return "OutsideM";
    case ErrorKind::NotARelation: return "NotARelation";
    case ErrorKind::PrecisionUnstable: return "PrecisionUnstable";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NoUnitRoot: return "NoUnitRoot";
    case ErrorKind::MultipleUnitRoots: return "MultipleUnitRoots";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::RouteDisagreement: return "RouteDisagreement";
  }
  return "Unknown";
}

}  // namespace unitroot
