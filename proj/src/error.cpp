#include "ide/error.hpp"

namespace ide {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid-argument";
        case ErrorCode::IncompatibleGrids: return "incompatible-grids";
        case ErrorCode::InvalidTimeOrder: return "invalid-time-order";
        case ErrorCode::BoundFormulaOutOfRange: return "bound-formula-out-of-range";
        case ErrorCode::NoContraction: return "no-contraction";
        case ErrorCode::BudgetExceeded: return "budget-exceeded";
        case ErrorCode::DivergentInput: return "divergent-input";
        case ErrorCode::Config: return "config-error";
    }
    return "unknown";
}

}  // namespace ide
