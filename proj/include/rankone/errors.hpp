#pragma once

#include <stdexcept>

namespace rankone {

/// Malformed numeric text, division by zero and similar value errors.
class value_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Matrix or vector shapes that do not fit the requested operation.
class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Structured input violating a documented invariant (skew symmetry, degree bounds, ...).
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A polyhedron or graph that cannot be given the requested structure.
class structural_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace rankone
