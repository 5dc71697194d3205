#pragma once

#include <stdexcept>
#include <string>

namespace pecoh
{

    // A mathematical contract failed an exact check (certificate, eigen-equation,
    // count-matrix mismatch, ...). The CLI maps this to exit code 2.
    struct VerificationError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // Bad value handed to an operation: division by zero, depth over the cap, ...
    struct DomainError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // A triangle that is not translation-congruent to any prototile.
    struct ClassifyError : DomainError
    {
        using DomainError::DomainError;
    };

    // A query (ball, grid, site) left the reliable region of a finite pattern.
    struct RegionError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // Float-path membership test hit the guard band around a patch boundary.
    struct AmbiguityError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // A JSON document does not match the expected schema; the message names
    // the offending field. The CLI maps this to exit code 1.
    struct SchemaError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

} // namespace pecoh
