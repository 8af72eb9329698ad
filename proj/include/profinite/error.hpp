#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace profinite {

  /// Base class of every error raised by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  /// Malformed input: bad files, unknown symbols, sort mismatches,
  /// signature mismatches between algebras.
  class InputError : public Error {
   public:
    using Error::Error;
  };

  /// Syntax error at a byte offset of the parsed text.
  class ParseError : public InputError {
   public:
    ParseError(std::size_t offset, const std::string& what)
        : InputError("syntax error at offset " + std::to_string(offset) + ": "
                     + what),
          offset_(offset),
          detail_(what) {}

    std::size_t offset() const noexcept {
      return offset_;
    }
    /// Message without the offset prefix.
    const std::string& detail() const noexcept {
      return detail_;
    }

   private:
    std::size_t offset_;
    std::string detail_;
  };

  /// An exhaustive search hit its configured work limit.
  class BudgetExceeded : public Error {
   public:
    using Error::Error;
  };

  /// Default number of work units (tables, tuples, search nodes) an
  /// exhaustive procedure may spend before raising BudgetExceeded.
  inline constexpr std::uint64_t kDefaultBudget = 50'000'000;

}  // namespace profinite
