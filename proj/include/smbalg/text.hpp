#pragma once

#include <cstddef>      // for size_t
#include <string>       // for string
#include <string_view>  // for string_view
#include <vector>       // for vector

#include "smbalg/algebra.hpp"
#include "smbalg/identity.hpp"
#include "smbalg/term.hpp"

namespace smbalg {

  //! Parses one algebra in the .alg format:
  //!
  //!     # comment
  //!     algebra NAME
  //!     size N
  //!     op SYMBOL ARITY
  //!     <N^ARITY entries, last argument fastest>
  //!     derive SYMBOL ARITY = TERM
  //!
  //! Throws ParseError (with line and column) on any malformed input,
  //! including files holding more than one algebra.
  FiniteAlgebra parse_algebra(std::string_view text);

  //! Every algebra of a file; each starts with an `algebra` line.
  std::vector<FiniteAlgebra> parse_algebras(std::string_view text);

  //! Canonical .alg text; parse_algebra(print_algebra(a)) == a.
  std::string print_algebra(FiniteAlgebra const& alg);

  //! Binds identifiers to variable indices in order of first use.
  class VariableScope {
   public:
    std::size_t bind(std::string_view name);
    std::vector<std::string> const& names() const noexcept {
      return _names;
    }

   private:
    std::vector<std::string> _names;
  };

  //! Terms: identifiers, f(t, ..., t) and element literals @k.  When a
  //! signature is given, unknown symbols and arity mismatches are errors and
  //! an identifier that names an operation cannot be a variable.
  Term parse_term(std::string_view text, Signature const* signature = nullptr);
  Term parse_term(std::string_view text, VariableScope& scope, Signature const* signature = nullptr);

  //! `TERM = TERM`
  Identity parse_identity(std::string_view text, Signature const* signature = nullptr);

  //! `ID & ID ... -> ID`; without `->` the text is a plain identity.
  Quasiidentity parse_quasiidentity(std::string_view text, Signature const* signature = nullptr);

  //! Term text with variables named by \p names (default x, y, z, ...).
  std::string print_term(Term const& t, std::vector<std::string> const& names = {});

}  // namespace smbalg
