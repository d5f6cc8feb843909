#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dagic {

enum class ErrorCode {
  // graph construction
  EmptyOntology,
  DuplicateTerm,
  UnknownTermInEdge,
  CycleDetected,
  MultipleRoots,
  NoRoot,
  UnreachableTerms,
  UnknownTerm,
  // OBO ingestion
  MalformedStanza,
  DuplicateTermId,
  InvalidEncoding,
  EmptyAfterFilter,
  // annotation ingestion
  MalformedLine,
  UnknownFormat,
  EmptyCorpus,
  // metrics
  TooLargeForOracle,
  DegenerateOntology,
  // similarity
  NoDefinedCommonAncestor,
  UnknownGene,
  EmptyTermSet,
  // benchmark
  NegativeScore,
  MissingScore,
  ZeroDenominator,
  TooFewBins,
  DegenerateRegression,
  // front end
  MissingCorpus,
  InvalidConfig,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyOntology: return "EmptyOntology";
    case ErrorCode::DuplicateTerm: return "DuplicateTerm";
    case ErrorCode::UnknownTermInEdge: return "UnknownTermInEdge";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::UnreachableTerms: return "UnreachableTerms";
    case ErrorCode::UnknownTerm: return "UnknownTerm";
    case ErrorCode::MalformedStanza: return "MalformedStanza";
    case ErrorCode::DuplicateTermId: return "DuplicateTermId";
    case ErrorCode::InvalidEncoding: return "InvalidEncoding";
    case ErrorCode::EmptyAfterFilter: return "EmptyAfterFilter";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::UnknownFormat: return "UnknownFormat";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::TooLargeForOracle: return "TooLargeForOracle";
    case ErrorCode::DegenerateOntology: return "DegenerateOntology";
    case ErrorCode::NoDefinedCommonAncestor: return "NoDefinedCommonAncestor";
    case ErrorCode::UnknownGene: return "UnknownGene";
    case ErrorCode::EmptyTermSet: return "EmptyTermSet";
    case ErrorCode::NegativeScore: return "NegativeScore";
    case ErrorCode::MissingScore: return "MissingScore";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::TooFewBins: return "TooFewBins";
    case ErrorCode::DegenerateRegression: return "DegenerateRegression";
    case ErrorCode::MissingCorpus: return "MissingCorpus";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library. `line()` is set for parse errors
/// (1-based line number in the offending stream).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(format(code, message, line)), code_(code), line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  static std::string format(ErrorCode code, const std::string& message,
                            std::optional<std::size_t> line) {
    std::string out(to_string(code));
    if (line) out += " (line " + std::to_string(*line) + ")";
    out += ": ";
    out += message;
    return out;
  }

  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace dagic
