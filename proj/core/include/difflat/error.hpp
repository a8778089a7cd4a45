#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace difflat {

// Base of every error raised by the library. Callers that only need to know
// "the computation was refused" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SingularBasis : public Error {
 public:
  using Error::Error;
};

class BallTooLarge : public Error {
 public:
  using Error::Error;
};

class RuleDimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotAnIndicatorComb : public Error {
 public:
  using Error::Error;
};

class ZRangeExceedsData : public Error {
 public:
  using Error::Error;
};

class EpsilonTooLarge : public Error {
 public:
  using Error::Error;
};

class NotADualLatticePoint : public Error {
 public:
  using Error::Error;
};

class DensityNotHalf : public Error {
 public:
  using Error::Error;
};

/// Parse failure in one of the text formats; carries the source name and the
/// 1-based line that could not be read (0 when the problem is file-level).
class MalformedFile : public Error {
 public:
  MalformedFile(std::string source, std::size_t line, const std::string& what)
      : Error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class MalformedLatticeFile : public MalformedFile {
 public:
  using MalformedFile::MalformedFile;
};

class MalformedCombFile : public MalformedFile {
 public:
  using MalformedFile::MalformedFile;
};

}  // namespace difflat
