#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbk {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid user configuration: bad spec string, bad grid, bad tolerance, ...
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Expression parser errors -------------------------------------------------

class SyntaxError : public Error {
public:
  SyntaxError(std::size_t offset, std::string expected)
      : Error("syntax error at offset " + std::to_string(offset) +
              ": expected " + expected),
        offset_(offset), expected_(std::move(expected)) {}
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

private:
  std::size_t offset_;
  std::string expected_;
};

class UnknownIdentifier : public Error {
public:
  UnknownIdentifier(std::size_t offset, std::string name)
      : Error("unknown identifier '" + name + "' at offset " +
              std::to_string(offset)),
        offset_(offset), name_(std::move(name)) {}
  std::size_t offset() const { return offset_; }
  const std::string& name() const { return name_; }

private:
  std::size_t offset_;
  std::string name_;
};

// Kernel validation errors -------------------------------------------------

class AsymmetricKernel : public Error {
public:
  AsymmetricKernel(int j, int k, double a_jk, double a_kj)
      : Error("kernel is asymmetric at (" + std::to_string(j) + "," +
              std::to_string(k) + "): a(j,k)=" + std::to_string(a_jk) +
              " vs a(k,j)=" + std::to_string(a_kj)),
        j_(j), k_(k), a_jk_(a_jk), a_kj_(a_kj) {}
  int j() const { return j_; }
  int k() const { return k_; }
  double a_jk() const { return a_jk_; }
  double a_kj() const { return a_kj_; }

private:
  int j_, k_;
  double a_jk_, a_kj_;
};

class NegativeKernel : public Error {
public:
  NegativeKernel(int j, int k, double value)
      : Error("kernel is negative at (" + std::to_string(j) + "," +
              std::to_string(k) + "): value " + std::to_string(value)),
        j_(j), k_(k), value_(value) {}
  int j() const { return j_; }
  int k() const { return k_; }
  double value() const { return value_; }

private:
  int j_, k_;
  double value_;
};

class EvaluationError : public Error {
public:
  EvaluationError(int j, int k, const std::string& what)
      : Error("kernel evaluation failed at (" + std::to_string(j) + "," +
              std::to_string(k) + "): " + what),
        j_(j), k_(k) {}
  int j() const { return j_; }
  int k() const { return k_; }

private:
  int j_, k_;
};

// State / integration errors ------------------------------------------------

class TruncationTooSmall : public Error {
public:
  TruncationTooSmall(int index, int n)
      : Error("initial condition has index " + std::to_string(index) +
              " beyond truncation size " + std::to_string(n)),
        index_(index), n_(n) {}
  int index() const { return index_; }
  int truncation() const { return n_; }

private:
  int index_, n_;
};

class UnsupportedKernel : public Error {
public:
  explicit UnsupportedKernel(const std::string& msg) : Error(msg) {}
};

class StepSizeUnderflow : public Error {
public:
  StepSizeUnderflow(double t, double h)
      : Error("step size underflow at t=" + std::to_string(t) +
              " (h=" + std::to_string(h) + ")"),
        t_(t), h_(h) {}
  double t() const { return t_; }
  double h() const { return h_; }

private:
  double t_, h_;
};

// Diagnostics errors ---------------------------------------------------------

class KernelMismatch : public Error {
public:
  explicit KernelMismatch(const std::string& msg) : Error(msg) {}
};

class PreconditionViolated : public Error {
public:
  explicit PreconditionViolated(const std::string& msg) : Error(msg) {}
};

}  // namespace rbk
