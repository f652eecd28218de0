#ifndef LEMMACOREF_ERROR_H_
#define LEMMACOREF_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace lemmacoref {

// Every failure raised by the library carries one of these codes so callers
// (CLI exit status, tests) can branch on the kind without parsing messages.
enum class ErrorCode {
  kIo,
  kMalformedRecord,
  kDuplicateMentionId,
  kMissingGoldLabel,
  kDanglingReference,
  kMissingGroupKey,
  kEmptySplitSelection,
  kUnknownMentionId,
  kInconsistentPairSet,
  kEmptyGrid,
  kMissingDocumentText,
  kMissingPair,
  kDuplicatePair,
  kScoreOutOfRange,
  kUniverseMismatch,
  kInvalidConfig,
  kScorerFailure,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lemmacoref

#endif  // LEMMACOREF_ERROR_H_
