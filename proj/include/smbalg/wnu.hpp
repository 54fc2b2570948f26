#pragma once

#include <cstddef>      // for size_t
#include <optional>     // for optional
#include <span>         // for span
#include <string>       // for string
#include <string_view>  // for string_view
#include <vector>       // for vector

#include "smbalg/algebra.hpp"
#include "smbalg/analyzer.hpp"
#include "smbalg/partition.hpp"

namespace smbalg {

  //! Throws HypothesisError unless \p symbol names a wnu operation.
  void require_wnu(FiniteAlgebra const& alg, std::string_view symbol);

  //! x o y = w(x, ..., x, y).  Throws HypothesisError if w is not a wnu.
  OperationTable circ_table(FiniteAlgebra const& alg, std::string_view symbol);

  //! The unique idempotent among the powers f, f^2, f^3, ... of a self-map
  //! (equal to f^(n!) for a map on n points).
  std::vector<Elem> idempotent_power(std::span<Elem const> f);

  struct WnuIteration {
    //! stages[0] is w, stages[i] is w_{i+1}; the last one is w_{|A|} (or an
    //! earlier fixpoint).
    std::vector<OperationTable> stages;
    bool                        fixpoint = false;

    OperationTable const& result() const {
      return stages.back();
    }
  };

  //! w_{i+1}(x) = w_i(w_i(x) o x_1, ..., w_i(x) o x_n) up to w_{|A|}, stopping
  //! early at a fixpoint.  Throws HypothesisError if w is not a wnu and
  //! TheoremFalsified if some w_i is not.
  WnuIteration iterate_wnu(FiniteAlgebra const& alg, std::string_view symbol);

  //! x o_v y for the special wnu v built from w: each row map y -> x o y is
  //! replaced by its idempotent power.
  OperationTable special_circ(FiniteAlgebra const& alg, std::string_view symbol);

  struct ClassOrderReport {
    //! Present when the order does not depend on representatives.
    std::optional<ClassOrder> order;
    //! (x, y, x', y') with x ~ x', y ~ y' giving different answers.
    std::optional<std::vector<Elem>> inconsistency;
    bool partial_order = false;
    std::optional<std::size_t> least;
    std::optional<std::size_t> greatest;
    bool glb_closed = false;
  };

  //! [x] <= [y] iff (y o x) ~ x.
  ClassOrderReport class_order_from_circ(OperationTable const& circ, Partition const& sim);

  struct SemilatticeTermResult {
    OperationTable wedge;
    //! check_semilattice_over for (A; wedge) over sim.
    SmbReport report;
  };

  //! x ^ y = (y o_v x) o_v y with o_v the special circ of w_{|A|}.  Requires
  //! w wnu, sim an Abelian congruence that is a coatom of Con A (or 1_A) and
  //! a greatest class in the circ order; otherwise throws HypothesisError.
  //! Throws TheoremFalsified if the result is not a semilattice modulo sim
  //! acting as the second projection on every class.
  SemilatticeTermResult semilattice_term(FiniteAlgebra const& alg,
                                         std::string_view     symbol,
                                         Partition const&     sim);

  struct PipelineResult {
    OperationTable           circ;
    OperationTable           iterated;
    OperationTable           circ_iterated;
    OperationTable           circ_special;
    std::optional<OperationTable> wedge_candidate;
    std::vector<std::string> diagnostics;
  };

  //! Runs every stage on w; the wedge stage only when sim is given and its
  //! hypotheses are established (otherwise a diagnostic says why).
  PipelineResult run_pipeline(FiniteAlgebra const&            alg,
                              std::string_view                symbol,
                              std::optional<Partition> const& sim = std::nullopt);

  //! The two-step regularization: first x ^1 y = (x ^ y) ^ y and
  //! d1 = d((y ^1 z) ^1 x, (x ^1 z) ^1 y, (x ^1 y) ^1 z); then ^2 is the
  //! idempotent power of t -> t ^1 y applied to x, and d2 is built from d1
  //! and ^2 the same way.  sim defaults to the wedge relation.  Throws
  //! HypothesisError if alg is not SMB over sim and TheoremFalsified if the
  //! output is not regular over the same sim or changes d on a class.
  FiniteAlgebra regularize(FiniteAlgebra const&            alg,
                           std::optional<Partition> const& sim = std::nullopt);

}  // namespace smbalg
