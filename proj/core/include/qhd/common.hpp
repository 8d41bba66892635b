#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace qhd {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorKind {
    InvalidInput,   // malformed data or violated precondition
    Unsupported,    // parameters outside what a constructor handles
    Inconsistent,   // a mathematical assertion failed on the given input
    Terminal,       // no further reduction possible
    Timeout,        // search budget exhausted
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string & what) :
        std::runtime_error(what),
        _kind(kind)
    {
    }

    [[nodiscard]] auto kind() const noexcept -> ErrorKind { return _kind; }

private:
    ErrorKind _kind;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string & what)
{
    throw Error(kind, what);
}

inline void require(bool condition, const std::string & what)
{
    if (! condition)
        fail(ErrorKind::InvalidInput, what);
}

} // namespace qhd
