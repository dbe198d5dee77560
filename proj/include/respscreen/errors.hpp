#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace respscreen {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Errors caused by the signal content of a clip (silent, inactive, too
/// short). The pipeline maps these to a prior-probability fallback when a
/// validation or test file cannot be scored; everything else stays fatal.
struct SignalError : Error {
    using Error::Error;
};

// audio_ingest
struct FileNotFound : Error { using Error::Error; };
struct UnsupportedFormat : Error { using Error::Error; };
struct CorruptStream : Error { using Error::Error; };
struct EmptyClip : SignalError { using SignalError::SignalError; };

// preprocess
struct AllZeroSignal : SignalError { using SignalError::SignalError; };
struct NoActivity : SignalError { using SignalError::SignalError; };
struct ClipTooShort : SignalError { using SignalError::SignalError; };

// features
struct BadWidth : Error { using Error::Error; };

// classifiers
struct SingleClass : Error { using Error::Error; };
struct NonFiniteLoss : Error { using Error::Error; };
struct DidNotImprove : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// pipeline / eval / corpus
struct ParseError : Error { using Error::Error; };
struct DuplicateId : Error { using Error::Error; };
struct MissingFile : Error { using Error::Error; };
struct FoldLeak : Error { using Error::Error; };
struct WrongModelCount : Error { using Error::Error; };
struct OutOfRangeProbability : Error { using Error::Error; };
struct SingleClassLabels : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

/// A file whose signal could not be turned into frames. Carries the file id
/// so callers can log it and apply the fallback score.
struct UnscorableFile : Error {
    std::string file_id;

    UnscorableFile(std::string id, const std::string& why)
        : Error("unscorable file '" + id + "': " + why), file_id(std::move(id)) {}
};

}  // namespace respscreen
