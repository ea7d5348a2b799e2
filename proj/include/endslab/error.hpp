#pragma once

#include <stdexcept>
#include <string>

namespace endslab {

// Bad arguments or malformed input; the caller can fix it.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A request that does not fit the computation horizon or a hard cap.
class HorizonError : public InputError {
public:
    using InputError::InputError;
};

// A checked theorem or structural invariant failed. Always a bug.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace endslab
