#pragma once

#include <stdexcept>
#include <string>

namespace rfm {

// Base class for everything this library throws. The CLI catches it at
// top level and turns it into a one-line diagnostic + nonzero exit.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two operands live on different grids.
struct GridMismatchError : Error {
    using Error::Error;
};

// A precondition on sizes, ranges or configuration was violated.
struct ContractError : Error {
    using Error::Error;
};

// Floating-point result inconsistent beyond what cancellation can explain.
struct NumericError : Error {
    using Error::Error;
};

// An allocation was refused; message carries the requested size.
struct CapacityError : Error {
    using Error::Error;
};

// A density/CDF callback returned values outside its contract.
struct InvalidLawError : Error {
    using Error::Error;
};

// The parent density vanishes at the median; variances undefined.
struct DegenerateLawError : Error {
    using Error::Error;
};

// The tail bound requires p < 1/2.
struct BoundInapplicableError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace rfm
