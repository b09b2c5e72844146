#include "seqwit/error.hpp"

namespace seqwit {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ApexNotExcludable: return "ApexNotExcludable";
    case ErrorCode::NotInIP: return "NotInIP";
    case ErrorCode::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case ErrorCode::NotConvergent: return "NotConvergent";
    case ErrorCode::ContinuousFunction: return "ContinuousFunction";
    case ErrorCode::UnsupportedChannel: return "UnsupportedChannel";
    case ErrorCode::NotInSP: return "NotInSP";
    case ErrorCode::MarkerNotInChain: return "MarkerNotInChain";
    case ErrorCode::CorpusNotInIP: return "CorpusNotInIP";
    case ErrorCode::FamilyNotAD: return "FamilyNotAD";
    case ErrorCode::UnsupportedSet: return "UnsupportedSet";
    case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::UnknownQuery: return "UnknownQuery";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "UnknownError";
}

}  // namespace seqwit
