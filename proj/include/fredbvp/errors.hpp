#pragma once

#include <stdexcept>
#include <string>

namespace fredbvp {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidProblem : public Error {
public:
    using Error::Error;
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

class OddStepCount : public Error {
public:
    using Error::Error;
};

class PointOutsideInterval : public Error {
public:
    using Error::Error;
};

class UnsupportedDerivativeOrder : public Error {
public:
    using Error::Error;
};

class DerivativeStackTooShallow : public Error {
public:
    using Error::Error;
};

class SingularFundamentalMatrix : public Error {
public:
    using Error::Error;
};

class UnsupportedFractionalOrder : public Error {
public:
    using Error::Error;
};

class PointTooCloseToB : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace fredbvp
