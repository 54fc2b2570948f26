#pragma once

#include <cstddef>   // for size_t
#include <map>       // for map
#include <optional>  // for optional
#include <utility>   // for pair
#include <vector>    // for vector

#include "smbalg/algebra.hpp"
#include "smbalg/analyzer.hpp"
#include "smbalg/partition.hpp"
#include "smbalg/relation.hpp"
#include "smbalg/term.hpp"

namespace smbalg {

  //! c = e_0, e_1, ..., e_m = d with {p_i(a), p_i(b)} = {e_{i-1}, e_i}.
  //! Each p_i is a unary polynomial in variable 0.
  struct PolynomialChain {
    std::vector<Elem> elements;
    std::vector<Term> polynomials;
  };

  //! Evaluates every polynomial at a and b and checks the chain links.
  bool replays(FiniteAlgebra const& alg, PolynomialChain const& chain, Elem a, Elem b);

  struct CgD3Report {
    bool           equal = false;
    BinaryRelation cg;
    BinaryRelation d3;
    //! One chain of length at most 6 per pair of Cg(a,b).
    std::map<std::pair<Elem, Elem>, PolynomialChain> chains;
  };

  //! Compares Cg(a,b) with D o D o D for D the D-relation of (a,b) and
  //! extracts a polynomial chain for every pair of Cg(a,b).  Throws
  //! HypothesisError unless the algebra satisfies the regular base.
  CgD3Report verify_cg_d3(SmbContext& ctx, Elem a, Elem b);
  CgD3Report verify_cg_d3(FiniteAlgebra const& alg, Elem a, Elem b);

  //! c = c_0, d_0, c_1, d_1, ..., c_k, d_k = d with c_i ~ d_i and
  //! {d_{i-1}, c_i} = {p_i(a), p_i(b)}.
  struct JoinChain {
    std::vector<Elem> c;
    std::vector<Elem> d;
    //! polynomials[i-1] links d_{i-1} and c_i.
    std::vector<Term> polynomials;
  };

  struct JoinMembership {
    bool                     member = false;
    std::optional<JoinChain> chain;
  };

  //! (c,d) in Cg(a,b) v sim, decided by a chain search over unary
  //! polynomial images and checked against the partition join.  Throws
  //! NotCongruence if sim is not a congruence and TheoremFalsified if the
  //! two answers differ.
  JoinMembership join_membership_chain(SmbContext& ctx, Partition const& sim,
                                       Elem a, Elem b, Elem c, Elem d);
  JoinMembership join_membership_chain(FiniteAlgebra const& alg, Partition const& sim,
                                       Elem a, Elem b, Elem c, Elem d);

  struct BelowPair {
    Elem e;
    Elem f;
  };

  //! e and f with (c,e), (d,f) in Cg(a,b), e ~ f and [e] <= [c] ^ [d], built
  //! by folding wedge along a join chain.  Returns nullopt when (c,d) is not
  //! in Cg(a,b) v sim.  Throws TheoremFalsified if a property fails.
  std::optional<BelowPair> cgvsim_below(SmbContext& ctx, Elem a, Elem b, Elem c, Elem d);
  std::optional<BelowPair> cgvsim_below(FiniteAlgebra const& alg, Elem a, Elem b, Elem c, Elem d);

  //! (c,d) in Cg(a,b) v sim iff (c, d^c) and (d, c^d) are in Cg(a,b).
  bool check_cgvsim(SmbContext& ctx, Elem a, Elem b, Elem c, Elem d);
  bool check_cgvsim(FiniteAlgebra const& alg, Elem a, Elem b, Elem c, Elem d);

  //! Cg(a,b) meet Cg(c,d) below sim iff the quotient principal congruences
  //! meet trivially.
  bool check_undersim(SmbContext& ctx, Elem a, Elem b, Elem c, Elem d);
  bool check_undersim(FiniteAlgebra const& alg, Elem a, Elem b, Elem c, Elem d);

  //! [Cg(a,b), Cg(c,d)] below sim iff the quotient principal congruences
  //! meet trivially.
  bool commutator_below_sim(SmbContext& ctx, Elem a, Elem b, Elem c, Elem d);
  bool commutator_below_sim(FiniteAlgebra const& alg, Elem a, Elem b, Elem c, Elem d);

  struct FoldResult {
    Elem e;
    bool covers_first = false;
    bool covers_last  = false;
    bool below_meet   = false;

    bool holds() const noexcept {
      return covers_first && covers_last && below_meet;
    }
  };

  //! e = (..((c_0 ^ c_1) ^ c_2) ^ ..) ^ c_k for the chain c_0, d_0, ..., c_k,
  //! d_k, and whether every theta-class meeting [c_0] or [d_k] meets [e],
  //! and [e] <= [c_0 ^ d_k].  Throws InvalidAlgebra for a malformed chain
  //! and HypothesisError unless alg is SMB over sim and theta is a congruence.
  FoldResult leminjection_fold(FiniteAlgebra const&     alg,
                               Partition const&         sim,
                               Partition const&         theta,
                               std::vector<Elem> const& chain);

  //! A chain c_0, d_0, ..., c_k, d_k from a to b alternating sim and theta,
  //! or nullopt if (a,b) is not in sim v theta.
  std::optional<std::vector<Elem>> alternating_chain(Partition const& sim,
                                                     Partition const& theta,
                                                     Elem a, Elem b);

}  // namespace smbalg
