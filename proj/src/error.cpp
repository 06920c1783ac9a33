#include "sext/error.hpp"

namespace sext {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::AsymmetricMatrix: return "AsymmetricMatrix";
        case Errc::NonzeroDiagonal: return "NonzeroDiagonal";
        case Errc::TriangleViolation: return "TriangleViolation";
        case Errc::ZeroOffDiagonal: return "ZeroOffDiagonal";
        case Errc::NegativeDistance: return "NegativeDistance";
        case Errc::NoEdges: return "NoEdges";
        case Errc::Disconnected: return "Disconnected";
        case Errc::ConflictingEdge: return "ConflictingEdge";
        case Errc::NotPseudoIsometry: return "NotPseudoIsometry";
        case Errc::InvalidGenSet: return "InvalidGenSet";
        case Errc::ClosureBudgetExceeded: return "ClosureBudgetExceeded";
        case Errc::BudgetExhausted: return "BudgetExhausted";
        case Errc::ConflictingWeight: return "ConflictingWeight";
        case Errc::CollapsedPoints: return "CollapsedPoints";
        case Errc::NotReduced: return "NotReduced";
        case Errc::IncompatibleQuotient: return "IncompatibleQuotient";
        case Errc::NotInvariant: return "NotInvariant";
        case Errc::NotConsistent: return "NotConsistent";
        case Errc::IncompatibleSeed: return "IncompatibleSeed";
        case Errc::NotGenerating: return "NotGenerating";
        case Errc::NotUltrametric: return "NotUltrametric";
        case Errc::NotHomogeneous: return "NotHomogeneous";
        case Errc::NotNet: return "NotNet";
        case Errc::DistanceBelowEps: return "DistanceBelowEps";
        case Errc::TooLarge: return "TooLarge";
        case Errc::PoolEmpty: return "PoolEmpty";
        case Errc::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

}  // namespace sext
