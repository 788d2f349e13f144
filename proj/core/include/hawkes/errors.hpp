#pragma once

#include <stdexcept>
#include <string>

namespace hawkes {

// Invalid user-supplied parameter or malformed input value.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical object that must be positive definite (or otherwise
// well-posed) is not, e.g. a degenerate empirical Gram matrix.
class DegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hawkes
