#pragma once

#include <stdexcept>
#include <string>

namespace fracperi {

/// Out-of-range numeric argument (s outside its window, too few nodes, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input object violates its invariants (non-convex body, self-intersecting loop, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operation not defined for this variant (e.g. polar of a support-backed body).
class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Results that contradict each other, e.g. an inverted isoperimetric bracket.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fracperi
