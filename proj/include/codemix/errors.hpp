#pragma once

#include <stdexcept>
#include <string>

namespace codemix {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Network, HTTP, or backend failure while talking to an external service.
class ProviderError : public Error {
  public:
    using Error::Error;
};

/// A provider response does not conform to the expected schema.
class SchemaError : public ProviderError {
  public:
    using ProviderError::ProviderError;
};

/// A provider returned an empty response for non-empty input.
class EmptyResponse : public ProviderError {
  public:
    using ProviderError::ProviderError;
};

/// Replay-mode cache has no record for the request.
class CacheMiss : public ProviderError {
  public:
    using ProviderError::ProviderError;
};

/// Two embedding vectors of different dimension were compared.
class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

/// A persisted file (vocab, cache, dataset) is malformed.
class FormatError : public Error {
  public:
    using Error::Error;
};

/// Verb base form minus its infinitive marker is not a prefix of the
/// inflected word.
class StemMismatch : public Error {
  public:
    using Error::Error;
};

/// Verb suffix falls outside every enumerated rule set.
class UnhandledSuffix : public Error {
  public:
    using Error::Error;
};

/// Sample statistics requested on fewer than two values.
class InsufficientData : public Error {
  public:
    using Error::Error;
};

/// An operation that requires non-empty input received an empty one.
class EmptyInput : public Error {
  public:
    using Error::Error;
};

} // namespace codemix
