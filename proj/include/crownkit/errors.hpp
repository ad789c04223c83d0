#pragma once

#include <stdexcept>
#include <string>

namespace crownkit {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Unknown space identifier or a suite that does not apply to the space.
class configuration_error : public error {
public:
  using error::error;
};

/// Restricted-root eigenstructure could not be resolved.
class decomposition_error : public error {
public:
  using error::error;
};

/// A root space has the wrong dimension or a normalization failed.
class structure_error : public error {
public:
  using error::error;
};

/// The pair is not Hermitian: no central element of k acts as a complex structure on p.
class not_hermitian_error : public error {
public:
  using error::error;
};

/// Argument outside the domain of an operation (point outside the cell, vector not in p, ...).
class domain_error : public error {
public:
  using error::error;
};

/// Operation evaluated at a non-regular point where sin(alpha(H)) vanishes.
class singularity_error : public error {
public:
  using error::error;
};

/// Coordinate frame of the chart is singular or too badly conditioned.
class frame_error : public error {
public:
  using error::error;
};

/// Tangent vectors attached to different base points.
class usage_error : public error {
public:
  using error::error;
};

/// Random sampler could not produce valid chart points.
class sampling_error : public error {
public:
  using error::error;
};

} // namespace crownkit
