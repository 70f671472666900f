#pragma once

#include <stdexcept>
#include <string>

namespace albench {

/// Base for every error raised by the library. Each subclass maps onto one
/// failure family so callers (the CLI in particular) can pick an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input record or file layout.
class FormatError : public Error {
public:
    FormatError(const std::string& what, long record = -1)
        : Error(record >= 0 ? what + " (record " + std::to_string(record) + ")" : what),
          record_(record) {}

    long record() const noexcept { return record_; }

private:
    long record_;
};

/// Data is well formed but unusable (single class, empty vocabulary, ...).
class DatasetError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Design matrix rows do not line up with the corpus.
class AlignmentError : public Error {
public:
    using Error::Error;
};

/// Embedding payload failed a checksum or finiteness check.
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// A strategy was invoked without the inputs it requires.
class ContractError : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

}  // namespace albench
