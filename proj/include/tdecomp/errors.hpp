#pragma once

#include <stdexcept>
#include <string>

namespace tdecomp {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConstantPolynomial : public Error {
public:
  ConstantPolynomial() : Error("operation needs a nonconstant polynomial") {}
};

class BadDivisor : public Error {
public:
  BadDivisor() : Error("divisor has degree 0 in the division variable") {}
};

class EmptySystem : public Error {
public:
  EmptySystem() : Error("empty system") {}
};

class RankDeficient : public Error {
public:
  RankDeficient() : Error("no nonsingular maximal submatrix on this branch") {}
};

class MainVariableInCoefficients : public Error {
public:
  explicit MainVariableInCoefficients(const std::string& what)
      : Error("input involves a variable above the main variable: " + what) {}
};

class Inconsistent : public Error {
public:
  Inconsistent() : Error("system contains a nonzero constant equation") {}
};

class BranchLimitExceeded : public Error {
public:
  explicit BranchLimitExceeded(std::size_t cap)
      : Error("branch limit of " + std::to_string(cap) + " exceeded") {}
};

class BadLeader : public Error {
public:
  explicit BadLeader(const std::string& what) : Error("bad leader: " + what) {}
};

class NoPointsFound : public Error {
public:
  NoPointsFound() : Error("no sample points found within the retry budget") {}
};

class TooLarge : public Error {
public:
  TooLarge() : Error("system too large for the brute-force solver") {}
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error("parse error at position " + std::to_string(pos) + ": " + msg), position(pos), reason(msg) {}
  std::size_t position;
  std::string reason;
};

} // namespace tdecomp
