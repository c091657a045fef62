#pragma once

#include <stdexcept>
#include <string>

#include "polyfrac/op_path.hpp"

namespace polyfrac {

class polyfrac_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RingMismatch : public polyfrac_error {
public:
    RingMismatch() : polyfrac_error("operands belong to different polynomial rings") {}
};

class SizeMismatch : public polyfrac_error {
public:
    using polyfrac_error::polyfrac_error;
};

class OddSize : public polyfrac_error {
public:
    explicit OddSize(std::size_t n)
        : polyfrac_error("matrix of odd size " + std::to_string(n) + " has no quadrants") {}
};

class ParseError : public polyfrac_error {
public:
    using polyfrac_error::polyfrac_error;
};

class ZeroMatrix : public polyfrac_error {
public:
    ZeroMatrix() : polyfrac_error("content of the zero matrix is undefined") {}
};

class DomainError : public polyfrac_error {
public:
    using polyfrac_error::polyfrac_error;
};

// Raised when an exact division leaves a remainder. Inside the inversion
// algorithms this means a content prediction was wrong; it is never recovered.
class NotDivisible : public polyfrac_error {
public:
    explicit NotDivisible(const std::string& what, OpPath where = {})
        : polyfrac_error(where.empty() ? what : what + " at " + where.to_string()),
          path(std::move(where)) {}
    OpPath path;
};

// A leading block or Schur complement met during recursion is singular.
class SingularPivot : public polyfrac_error {
public:
    explicit SingularPivot(OpPath where)
        : polyfrac_error("singular pivot block at " + where.to_string()), path(std::move(where)) {}
    OpPath path;
};

} // namespace polyfrac
