#pragma once

#include <stdexcept>
#include <string>

namespace latmc {

// Every error raised by the library derives from Error so front ends can
// catch one type and map the concrete class to an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidGeometry : public Error {
public:
    using Error::Error;
};

class InvalidSite : public Error {
public:
    using Error::Error;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

// A caller broke an operation's precondition (mismatched sizes,
// non-monotone measurement steps, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace latmc
