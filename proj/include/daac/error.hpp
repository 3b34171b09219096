#pragma once

#include <stdexcept>
#include <string>

namespace daac {

// Root of all library errors. Catch this to handle any failure coming out of
// dictionary loading, construction, matching or archive IO.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed dictionary input (empty pattern, duplicate, BOM, bad line ending).
class DictionaryError : public Error {
 public:
  using Error::Error;
};

// Invalid UTF-8 under a code-point scheme.
class EncodingError : public Error {
 public:
  using Error::Error;
};

// Unsupported technique combination, e.g. Compact with Charwise.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// The automaton does not fit the id width of the selected format.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Archive with a bad magic, unknown version or unknown tags.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Archive that is truncated, has trailing bytes, or violates structural
// invariants.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

}  // namespace daac
