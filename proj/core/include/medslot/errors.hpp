#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace medslot {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (files, offsets, indices).
class DataError : public Error {
 public:
  using Error::Error;
};

class MalformedEntry : public DataError {
 public:
  MalformedEntry(int line_no, const std::string& reason)
      : DataError("malformed annotation entry at line " + std::to_string(line_no) + ": " + reason),
        line_no_(line_no),
        reason_(reason) {}
  int line_no() const { return line_no_; }
  const std::string& reason() const { return reason_; }

 private:
  int line_no_;
  std::string reason_;
};

class OffsetOrderError : public DataError {
 public:
  OffsetOrderError(int line_no, const std::string& detail)
      : DataError("start offset after end offset at line " + std::to_string(line_no) + ": " + detail),
        line_no_(line_no) {}
  int line_no() const { return line_no_; }

 private:
  int line_no_;
};

class OffsetOutOfRange : public DataError {
 public:
  using DataError::DataError;
};

class DanglingJoiner : public DataError {
 public:
  using DataError::DataError;
};

class MalformedMergesFile : public DataError {
 public:
  using DataError::DataError;
};

class JsonlError : public DataError {
 public:
  JsonlError(long line_no, const std::string& reason)
      : DataError("bad jsonl record at line " + std::to_string(line_no) + ": " + reason) {}
};

class CsvError : public DataError {
 public:
  using DataError::DataError;
};

class AlignmentError : public DataError {
 public:
  explicit AlignmentError(std::vector<std::string> unmatched)
      : DataError(describe(unmatched)), unmatched_(std::move(unmatched)) {}
  const std::vector<std::string>& unmatched_keys() const { return unmatched_; }

 private:
  static std::string describe(const std::vector<std::string>& keys) {
    std::string msg = "prediction/reference keys do not align:";
    std::size_t shown = 0;
    for (const auto& k : keys) {
      if (shown++ == 8) {
        msg += " ...";
        break;
      }
      msg += " " + k;
    }
    return msg;
  }
  std::vector<std::string> unmatched_;
};

class VersionMismatch : public DataError {
 public:
  using DataError::DataError;
};

class CorruptCheckpoint : public DataError {
 public:
  using DataError::DataError;
};

class EmptyPairedSet : public DataError {
 public:
  using DataError::DataError;
};

class EmptySource : public DataError {
 public:
  using DataError::DataError;
};

class IndexOutOfVocab : public DataError {
 public:
  using DataError::DataError;
};

// Shape or usage violations inside the numeric engine.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class NonScalarLoss : public Error {
 public:
  using Error::Error;
};

// Training blew up: loss or gradients stopped being finite.
class TrainingError : public Error {
 public:
  using Error::Error;
};

class NonFiniteGradient : public TrainingError {
 public:
  using TrainingError::TrainingError;
};

class NonFiniteLoss : public TrainingError {
 public:
  using TrainingError::TrainingError;
};

class DivergedTraining : public TrainingError {
 public:
  using TrainingError::TrainingError;
};

}  // namespace medslot
