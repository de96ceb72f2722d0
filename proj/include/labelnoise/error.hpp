#pragma once

#include <stdexcept>
#include <string>

namespace labelnoise {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument value was violated (negative sigma, bad spacing, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Two masks that must share dimensions do not.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Two datasets that must be slice-aligned are not.
class AlignmentError : public Error {
public:
    using Error::Error;
};

/// An aggregate was requested over zero slices.
class EmptySampleError : public Error {
public:
    using Error::Error;
};

/// Requested geometry does not fit inside the image.
class BoundsError : public Error {
public:
    using Error::Error;
};

// Persistence errors.
class FormatError : public Error {
public:
    using Error::Error;
};

class IntegrityError : public Error {
public:
    using Error::Error;
};

class DecodeError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace labelnoise
