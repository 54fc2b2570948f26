#pragma once

#include <array>        // for array
#include <cstddef>      // for size_t
#include <memory>       // for unique_ptr
#include <optional>     // for optional
#include <string>       // for string
#include <vector>       // for vector

#include "smbalg/algebra.hpp"
#include "smbalg/congruence.hpp"
#include "smbalg/identity.hpp"
#include "smbalg/partition.hpp"

namespace smbalg {

  //! A partial order on the classes of a partition.
  class ClassOrder {
   public:
    ClassOrder() = default;
    ClassOrder(Partition classes, std::vector<std::vector<bool>> leq);

    Partition const& partition() const noexcept {
      return _classes;
    }
    std::size_t num_classes() const noexcept {
      return _leq.size();
    }
    //! class i <= class j
    bool leq(std::size_t i, std::size_t j) const noexcept {
      return _leq[i][j];
    }
    bool leq_elems(Elem x, Elem y) const noexcept {
      return _leq[_classes.class_of(x)][_classes.class_of(y)];
    }

    bool is_partial_order() const;
    std::optional<std::size_t> least() const;
    std::optional<std::size_t> greatest() const;
    //! Greatest lower bound, if it exists.
    std::optional<std::size_t> glb(std::size_t i, std::size_t j) const;
    //! Every pair of classes has a greatest lower bound.
    bool is_meet_semilattice() const;

    bool operator==(ClassOrder const&) const = default;

   private:
    Partition                      _classes;
    std::vector<std::vector<bool>> _leq;
  };

  struct Violation {
    std::string       rule;
    std::vector<Elem> witness;

    bool operator==(Violation const&) const = default;
  };

  struct SmbReport {
    bool                      holds = false;
    Partition                 sim;
    std::vector<Violation>    violations;
    std::optional<ClassOrder> class_order;
  };

  //! Throws InvalidAlgebra unless alg has a binary "wedge" and a ternary "d".
  void require_smb_signature(FiniteAlgebra const& alg);

  //! Checks that \p sim is a congruence, that A/sim is a wedge-semilattice and
  //! that wedge is the second projection and d is Mal'cev on every class.
  //! Reports the least witness for each failing rule.
  SmbReport check_smb_over(FiniteAlgebra const& alg, Partition const& sim);

  //! The wedge-only part of check_smb_over: sim is a congruence, A/sim is a
  //! wedge-semilattice and wedge is the second projection on every class.
  //! Needs only a binary "wedge".
  SmbReport check_semilattice_over(FiniteAlgebra const& alg, Partition const& sim);

  //! All congruences over which alg is SMB.  Throws CapExceeded above the
  //! lattice cap.
  std::vector<Partition> find_smb_congruences(FiniteAlgebra const&  alg,
                                              LatticeOptions const& options = {});

  //! The relation x~y iff x wedge y = y and y wedge x = x (closed to an
  //! equivalence).  In an SMB algebra this is the only possible witness.
  Partition wedge_relation(FiniteAlgebra const& alg);

  //! check_smb_over(alg, wedge_relation(alg)); no size cap.
  SmbReport detect_smb(FiniteAlgebra const& alg);

  struct RegularityReport {
    //! Conditions (i) to (iv), in order.
    std::array<Verdict, 4> conditions;

    bool regular() const noexcept {
      return conditions[0] && conditions[1] && conditions[2] && conditions[3];
    }
  };

  //! Throws HypothesisError if alg is not SMB over \p sim.
  RegularityReport check_regular(FiniteAlgebra const& alg, Partition const& sim);

  struct BaseIdentity {
    std::string name;
    //! All parts must hold; Mal has two.
    std::vector<Identity> parts;
  };

  //! Idem1, Idem2, Comm, Assoc1, Assoc2, Mal, Regi1, Regi2, Regii1, Regii2,
  //! Regiii, Regiv.
  std::vector<BaseIdentity> const& regular_base_identities();

  struct BaseReport {
    std::vector<std::string>  names;
    std::vector<Verdict>      verdicts;
    std::optional<Partition>  recovered_sim;

    bool holds() const noexcept {
      return recovered_sim.has_value();
    }
  };

  //! Checks each base identity.  When all hold, recovers sim from wedge and
  //! confirms it with check_smb_over and check_regular, throwing
  //! TheoremFalsified otherwise.
  BaseReport check_regular_base(FiniteAlgebra const& alg);

  //! t(x1..x6) = d(x1 wedge x2, x3 wedge x4, x5 wedge x6) against the three
  //! Taylor identities; a counterexample is the least (x,y).
  Verdict taylor_check(FiniteAlgebra const& alg);

  //! Lazily computed facts about one algebra.  The algebra must outlive the
  //! context.  Not thread safe.
  class SmbContext {
   public:
    explicit SmbContext(FiniteAlgebra const& alg);
    ~SmbContext();
    SmbContext(SmbContext const&)            = delete;
    SmbContext& operator=(SmbContext const&) = delete;

    FiniteAlgebra const& algebra() const noexcept {
      return *_alg;
    }
    CongruenceCache& congruences() noexcept {
      return _cache;
    }

    BaseReport const& base();
    //! Throws HypothesisError unless alg satisfies the regular base.
    Partition const& sim();
    void             require_regular();

    Quotient const&  quotient();
    CongruenceCache& quotient_congruences();

    //! Cg(a,b) as a membership test.
    bool in_cg(Elem a, Elem b, Elem c, Elem d);

    Elem wedge(Elem x, Elem y) const {
      return _wedge->operator()({x, y});
    }
    Elem d(Elem x, Elem y, Elem z) const {
      return _d->operator()({x, y, z});
    }

   private:
    FiniteAlgebra const*             _alg;
    OperationTable const*            _wedge;
    OperationTable const*            _d;
    CongruenceCache                  _cache;
    std::optional<BaseReport>        _base;
    std::unique_ptr<Quotient>        _quotient;
    std::unique_ptr<CongruenceCache> _quotient_cache;
  };

}  // namespace smbalg
