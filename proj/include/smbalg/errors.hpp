#pragma once

#include <cstddef>    // for size_t
#include <stdexcept>  // for runtime_error
#include <string>     // for string

namespace smbalg {

  //! Base class of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! Bad symbol, arity or assignment while evaluating a term.
  class EvalError : public Error {
   public:
    using Error::Error;
  };

  //! A table or algebra violates its structural invariants.
  class InvalidAlgebra : public Error {
   public:
    using Error::Error;
  };

  //! A computation would exceed a configured size cap.
  class CapExceeded : public Error {
   public:
    using Error::Error;
  };

  //! A partition that was required to be a congruence is not one.
  class NotCongruence : public Error {
   public:
    using Error::Error;
  };

  //! The hypotheses of a theorem-backed operation could not be established.
  class HypothesisError : public Error {
   public:
    using Error::Error;
  };

  //! Two independently computed sides of a proved statement disagree.
  //!
  //! On valid input this is never thrown; seeing it means either a bug or a
  //! counterexample to the underlying mathematics.
  class TheoremFalsified : public Error {
   public:
    using Error::Error;
  };

  //! Syntax error in a text format, with 1-based position.
  class ParseError : public Error {
   public:
    ParseError(std::size_t line, std::size_t column, std::string const& reason)
        : Error("line " + std::to_string(line) + ", column "
                + std::to_string(column) + ": " + reason),
          _line(line),
          _column(column),
          _reason(reason) {}

    std::size_t line() const noexcept {
      return _line;
    }
    std::size_t column() const noexcept {
      return _column;
    }
    std::string const& reason() const noexcept {
      return _reason;
    }

   private:
    std::size_t _line;
    std::size_t _column;
    std::string _reason;
  };

}  // namespace smbalg
