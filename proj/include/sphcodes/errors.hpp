#ifndef SPHCODES_ERRORS_HPP
#define SPHCODES_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sphcodes {

/// Malformed text input (scalar tokens, code files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its mathematical domain.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionViolated : public DomainError {
public:
    using DomainError::DomainError;
};

class NonUnitVector : public DomainError {
public:
    NonUnitVector(std::size_t index, std::string norm_squared)
        : DomainError("NonUnitVector: vector " + std::to_string(index) + " has squared norm " + norm_squared),
          index(index),
          norm_squared(std::move(norm_squared)) {}

    std::size_t index;
    std::string norm_squared;
};

class AlphaOutOfRange : public DomainError {
public:
    explicit AlphaOutOfRange(const std::string& alpha)
        : DomainError("AlphaOutOfRange: alpha = " + alpha + " is outside [0, 1)") {}
};

class TooFewWords : public DomainError {
public:
    TooFewWords() : DomainError("TooFewWords: minimum distance needs at least two codewords") {}
};

class DuplicateCodewords : public DomainError {
public:
    explicit DuplicateCodewords(std::size_t index)
        : DomainError("DuplicateCodewords: codeword " + std::to_string(index) + " repeats an earlier word") {}
};

class NegativeAlpha : public DomainError {
public:
    NegativeAlpha() : DomainError("NegativeAlpha: alpha must be >= 0") {}
};

class NegativeJ : public DomainError {
public:
    explicit NegativeJ(const std::string& j)
        : DomainError("NegativeJ: s exceeds (1-1/q)r, j = " + j) {}
};

class OddBlockLength : public DomainError {
public:
    OddBlockLength() : DomainError("OddBlockLength: block length must be even") {}
};

class OracleRange : public DomainError {
public:
    explicit OracleRange(long s_prime)
        : DomainError("OracleRange: reduced distance s' = " + std::to_string(s_prime) + " < 1") {}
};

class NotBinary : public DomainError {
public:
    NotBinary() : DomainError("NotBinary: code alphabet must have q = 2") {}
};

}  // namespace sphcodes

#endif  // SPHCODES_ERRORS_HPP
