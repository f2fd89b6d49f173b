#pragma once

#include <stdexcept>
#include <string>

namespace icsi {

// Base for every failure raised by the library. Callers that only need a
// message can catch this; the CLI maps the subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: bad dimensions, out-of-range indices, invalid instances,
// unparsable files.
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A configured enumeration or node budget would be exceeded. Results derived
// after this point would not be certified, so the operation stops instead.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// The received word is not within the designed radius of any consistent
// explanation; raised by the coset-leader search.
class TooManyErrors : public Error {
public:
    using Error::Error;
};

// L does not let receiver i recover its demand even without errors.
class NotAnIndexCode : public Error {
public:
    using Error::Error;
};

}  // namespace icsi
