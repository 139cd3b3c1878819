#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sslab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Error taxonomy. Every error carries a message that names the offending
// field or precondition; the CLI maps them onto exit codes.
class LabError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or violated operation precondition.
class ConfigError : public LabError {
public:
  ConfigError(std::string field, const std::string& what)
      : LabError(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

class DecayCertificateError : public LabError {
public:
  using LabError::LabError;
};

// Dense path refused because the operator is larger than the configured limit.
class CapacityError : public LabError {
public:
  using LabError::LabError;
};

// Resolvent requested too close to an eigenvalue.
class NearSingularityError : public LabError {
public:
  NearSingularityError(const std::string& what, double eigenvalue)
      : LabError(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

private:
  double eigenvalue_;
};

// Test function support leaves the reliably resolved spectral window.
class WindowError : public LabError {
public:
  WindowError(const std::string& what, double lo, double hi)
      : LabError(what), lo_(lo), hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

private:
  double lo_, hi_;
};

class GapNotFoundError : public LabError {
public:
  GapNotFoundError(const std::string& what, double largest_margin)
      : LabError(what), largest_margin_(largest_margin) {}
  double largest_margin() const noexcept { return largest_margin_; }

private:
  double largest_margin_;
};

class GeometryError : public LabError {
public:
  using LabError::LabError;
};

// Cutoff support intersects the localized spectrum of Q.
class SupportOverlapError : public LabError {
public:
  SupportOverlapError(const std::string& what, double eigenvalue)
      : LabError(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

private:
  double eigenvalue_;
};

}  // namespace sslab
