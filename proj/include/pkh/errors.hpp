#pragma once

#include <stdexcept>
#include <string>

namespace pkh {

/// Base of every error the library raises on bad input or misuse.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class OddExponent : public Error {
 public:
  using Error::Error;
};

class MarkerMismatch : public Error {
 public:
  using Error::Error;
};

class DuplicateCrossing : public Error {
 public:
  using Error::Error;
};

class SiteNotFound : public Error {
 public:
  using Error::Error;
};

class IllegalSite : public Error {
 public:
  using Error::Error;
};

class SiteMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace pkh
