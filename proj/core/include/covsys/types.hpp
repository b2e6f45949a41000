#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace covsys
{

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

using Index = std::size_t;

// Malformed or mismatched input (bad shapes, empty sets, wrong algebra).
class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the domain of a mathematical operation.
class DomainError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition on a mathematical object failed.
class PreconditionError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Numerical procedure did not reach its accuracy target.
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846264338327950288;

} // namespace covsys
