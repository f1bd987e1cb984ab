#pragma once

#include <stdexcept>
#include <string>

namespace slassure {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Opinion algebra
struct InvalidOpinion : Error { using Error::Error; };
struct DogmaticOpinion : Error { using Error::Error; };
struct BaseRateMismatch : Error { using Error::Error; };
struct InvalidTarget : Error { using Error::Error; };

// Argument parsing / access
struct SchemaError : Error { using Error::Error; };
struct CycleError : Error { using Error::Error; };
struct DanglingReference : Error { using Error::Error; };
struct UnknownClaim : Error { using Error::Error; };
struct KindMismatch : Error { using Error::Error; };

// Monitor / replay
struct WindowSizeMismatch : Error { using Error::Error; };
struct OrderingError : Error { using Error::Error; };

}  // namespace slassure
