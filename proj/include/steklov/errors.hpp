#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace steklov {

/// Base of every error raised by the toolkit. Domain and numerical failures
/// derive from this directly; UsageError marks bad input/configuration.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NonPositiveProfile : public Error {
public:
    NonPositiveProfile(double x, double value)
        : Error("warping profile is not positive: f(" + std::to_string(x) +
                ") = " + std::to_string(value)),
          x_(x), value_(value) {}
    double x() const { return x_; }
    double value() const { return value_; }

private:
    double x_;
    double value_;
};

class BadDimension : public Error {
public:
    explicit BadDimension(int n)
        : Error("dimension must be >= 2, got " + std::to_string(n)) {}
};

class OutOfDomain : public Error {
public:
    explicit OutOfDomain(double x)
        : Error("evaluation point " + std::to_string(x) + " outside [0,1]") {}
};

class FrequencyOnDirichletSpectrum : public Error {
public:
    FrequencyOnDirichletSpectrum(int m, double magnitude, double threshold)
        : Error("characteristic function vanishes at transversal index m=" +
                std::to_string(m) + " (|Delta|=" + std::to_string(magnitude) +
                ", threshold " + std::to_string(threshold) +
                "): frequency lies on the Dirichlet spectrum"),
          m_(m) {}
    int m() const { return m_; }

private:
    int m_;
};

class IntegrationFailure : public Error {
public:
    using Error::Error;
};

class AtCharacteristicRoot : public Error {
public:
    using Error::Error;
};

class RootSearchFailure : public Error {
public:
    using Error::Error;
};

class OrderTooHigh : public Error {
public:
    OrderTooHigh(int order, double disagreement)
        : Error("expansion coefficient of order " + std::to_string(order) +
                " is dominated by differentiation noise (grid disagreement " +
                std::to_string(disagreement) + ")"),
          order_(order) {}
    int order() const { return order_; }

private:
    int order_;
};

class BranchAmbiguity : public Error {
public:
    using Error::Error;
};

class IllConditionedFit : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class EvaluationError : public Error {
public:
    using Error::Error;
};

class SyntaxError : public UsageError {
public:
    SyntaxError(std::size_t position, std::string expected)
        : UsageError("syntax error at offset " + std::to_string(position) +
                     ": expected " + expected),
          position_(position), expected_(std::move(expected)) {}
    std::size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

class ConfigError : public UsageError {
public:
    ConfigError(std::string field, const std::string& what)
        : UsageError("config field '" + field + "': " + what),
          field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

} // namespace steklov
