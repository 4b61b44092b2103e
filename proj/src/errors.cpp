#include "foundry/errors.hpp"

namespace foundry {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::config: return "configuration error";
        case ErrorKind::io: return "i/o error";
        case ErrorKind::precondition: return "precondition violation";
        case ErrorKind::transport: return "transport error";
        case ErrorKind::malformed_output: return "malformed-output error";
        case ErrorKind::missing_fixture: return "missing-fixture error";
        case ErrorKind::fixture_conflict: return "fixture-conflict error";
        case ErrorKind::empty_proposal: return "empty-proposal error";
        case ErrorKind::degenerate_taxonomy: return "degenerate-taxonomy error";
        case ErrorKind::undefined_denominator: return "undefined-denominator error";
        case ErrorKind::plan: return "plan error";
        case ErrorKind::empty_space: return "empty-space error";
        case ErrorKind::schedule: return "schedule error";
        case ErrorKind::metric: return "metric error";
    }
    return "error";
}

}  // namespace foundry
