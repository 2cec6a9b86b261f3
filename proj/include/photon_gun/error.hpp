// error.hpp - exception types shared by every module
//
// InvalidArgument: a precondition on user input failed (CLI exit code 2).
// NumericalError:  a computation could not reach its goal (CLI exit code 1).

#pragma once

#include <stdexcept>
#include <string>

namespace photon_gun {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

inline void require(bool condition, const std::string& message)
{
    if (!condition) throw InvalidArgument(message);
}

} // namespace photon_gun
