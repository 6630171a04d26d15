#pragma once

#include <stdexcept>
#include <string>

namespace minext {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kAliasing,
  kDegenerateCertificate,
  kCertificateRejected,
  kRankDeficient,
  kInconsistent,
  kNotApplicable,
  kUnsupported,
  kNumerical,
  kParse,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// the CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace minext
