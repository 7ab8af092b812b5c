#pragma once

#include <stdexcept>
#include <string>

namespace qmem {

/// Precondition violated by a caller-supplied value (index, angle, probability, layout).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical result left its admissible domain (non-PSD state, non-finite loss).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Statistical input without enough spread to define the statistic.
class DegenerateSample : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem or serialization failure; the message carries the offending path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qmem
