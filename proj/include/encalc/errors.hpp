#pragma once

#include <stdexcept>
#include <string>

namespace encalc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// graph_core
struct ParseError : Error { using Error::Error; };
struct DuplicateId : Error { using Error::Error; };
struct DanglingEdge : Error { using Error::Error; };

// exact_linalg
struct SingularMatrix : Error { using Error::Error; };

// plumbing_calculus
struct AxiomViolation : Error { using Error::Error; };
struct NonIntegralData : Error { using Error::Error; };
struct UnknownComponent : Error { using Error::Error; };

// theorem_suite
struct NotAdjacent : Error { using Error::Error; };
struct NotAChain : Error { using Error::Error; };
struct StuckContraction : Error { using Error::Error; };

// branch_builder
struct InvalidCharacteristic : Error { using Error::Error; };
struct InconsistentContact : Error { using Error::Error; };
struct ContactBeyondBranch : Error { using Error::Error; };
struct NonMinimal : Error { using Error::Error; };

} // namespace encalc
