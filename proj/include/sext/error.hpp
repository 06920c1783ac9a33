#pragma once

#include <stdexcept>
#include <string>

namespace sext {

enum class Errc {
    AsymmetricMatrix,
    NonzeroDiagonal,
    TriangleViolation,
    ZeroOffDiagonal,
    NegativeDistance,
    NoEdges,
    Disconnected,
    ConflictingEdge,
    NotPseudoIsometry,
    InvalidGenSet,
    ClosureBudgetExceeded,
    BudgetExhausted,
    ConflictingWeight,
    CollapsedPoints,
    NotReduced,
    IncompatibleQuotient,
    NotInvariant,
    NotConsistent,
    IncompatibleSeed,
    NotGenerating,
    NotUltrametric,
    NotHomogeneous,
    NotNet,
    DistanceBelowEps,
    TooLarge,
    PoolEmpty,
    InvalidInput,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace sext
