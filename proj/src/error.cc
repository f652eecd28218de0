#include "lemmacoref/error.h"

namespace lemmacoref {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kDuplicateMentionId: return "DuplicateMentionId";
    case ErrorCode::kMissingGoldLabel: return "MissingGoldLabel";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kMissingGroupKey: return "MissingGroupKey";
    case ErrorCode::kEmptySplitSelection: return "EmptySplitSelection";
    case ErrorCode::kUnknownMentionId: return "UnknownMentionId";
    case ErrorCode::kInconsistentPairSet: return "InconsistentPairSet";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kMissingDocumentText: return "MissingDocumentText";
    case ErrorCode::kMissingPair: return "MissingPair";
    case ErrorCode::kDuplicatePair: return "DuplicatePair";
    case ErrorCode::kScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::kUniverseMismatch: return "UniverseMismatch";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kScorerFailure: return "ScorerFailure";
  }
  return "Error";
}

}  // namespace lemmacoref
