#include "pathsim/error.hpp"

namespace pathsim {

const char* to_string(FitErrorKind kind) noexcept {
    switch (kind) {
        case FitErrorKind::insufficient_rows: return "insufficient_rows";
        case FitErrorKind::rank_deficient: return "rank_deficient";
        case FitErrorKind::zero_variance: return "zero_variance";
        case FitErrorKind::single_class: return "single_class";
        case FitErrorKind::separation: return "separation";
        case FitErrorKind::non_binary_response: return "non_binary_response";
    }
    return "unknown";
}

}  // namespace pathsim
