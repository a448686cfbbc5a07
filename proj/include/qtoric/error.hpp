#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qtoric {

enum class ErrorKind {
    // input data problems
    NonSquare,
    DimensionMismatch,
    NotUnimodular,
    RankNotOne,
    NotSimple,
    Disconnected,
    NonOrientable,
    SingularVertex,
    NonPrimitiveColumn,
    DimensionUnsupported,
    WrongPolytope,
    NotConnectedSumCohomology,
    SearchSpaceTooLarge,
    InvalidDocument,
    // arithmetic
    Overflow,
    GenericPointOnHyperplane,
    // internal invariant violations
    NonIntegralResult,
    QuotientNotRankOne,
    InconsistentWeights,
};

constexpr std::string_view to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::RankNotOne: return "RankNotOne";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NonOrientable: return "NonOrientable";
    case ErrorKind::SingularVertex: return "SingularVertex";
    case ErrorKind::NonPrimitiveColumn: return "NonPrimitiveColumn";
    case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
    case ErrorKind::WrongPolytope: return "WrongPolytope";
    case ErrorKind::NotConnectedSumCohomology: return "NotConnectedSumCohomology";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::InvalidDocument: return "InvalidDocument";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::GenericPointOnHyperplane: return "GenericPointOnHyperplane";
    case ErrorKind::NonIntegralResult: return "NonIntegralResult";
    case ErrorKind::QuotientNotRankOne: return "QuotientNotRankOne";
    case ErrorKind::InconsistentWeights: return "InconsistentWeights";
    }
    return "Unknown";
}

/// True for kinds that can only arise from a bug or corrupted state, never
/// from bad user input.
constexpr bool is_internal(ErrorKind k) {
    return k == ErrorKind::NonIntegralResult || k == ErrorKind::QuotientNotRankOne ||
           k == ErrorKind::InconsistentWeights;
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace qtoric
