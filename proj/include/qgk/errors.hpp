// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qgk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed image, hex, container or other input data.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Payload does not fit the carrier, or the carrier is below the header floor.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Argument outside its documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Raised when the system entropy source or a crypto primitive fails.
class CryptoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qgk
