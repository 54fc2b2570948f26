#pragma once

#include <optional>     // for optional
#include <string>       // for string
#include <string_view>  // for string_view
#include <vector>       // for vector

#include "smbalg/algebra.hpp"
#include "smbalg/term.hpp"

namespace smbalg {

  //! lhs ~ rhs, universally quantified over the variables of both sides.
  struct Identity {
    Term lhs;
    Term rhs;
  };

  //! premises => conclusion.  No premises degenerates to an identity.
  struct Quasiidentity {
    std::vector<Identity> premises;
    Identity              conclusion;
  };

  //! Outcome of an exhaustive model check.
  struct Verdict {
    bool                             holds = true;
    std::optional<std::vector<Elem>> counterexample;

    explicit operator bool() const noexcept {
      return holds;
    }
  };

  //! Checks \p id over every assignment.
  //!
  //! Assignments are scanned in lexicographic order with variable 0 most
  //! significant, so the counterexample is the lexicographically least one.
  Verdict check_identity(FiniteAlgebra const& alg, Identity const& id);

  //! As check_identity() over the assignments satisfying every premise.
  Verdict check_quasiidentity(FiniteAlgebra const& alg, Quasiidentity const& q);

  struct OperationFlags {
    bool idempotent        = false;
    bool wnu               = false;
    bool special_wnu       = false;
    bool malcev            = false;
    bool second_projection = false;

    bool operator==(OperationFlags const&) const = default;
  };

  //! Exhaustive truth values of the defining identities of each flag.
  //!
  //! wnu requires arity >= 2, idempotence, and w(y,x,...,x) = w(x,y,...,x) =
  //! ... = w(x,...,x,y).  special_wnu additionally requires x o (x o y) =
  //! x o y where x o y = w(x,...,x,y).  malcev requires arity 3.
  OperationFlags classify_operation(FiniteAlgebra const& alg, std::string_view symbol);

}  // namespace smbalg
