#pragma once

#include <cstddef>      // for size_t
#include <cstdint>      // for uint64_t
#include <string>       // for string
#include <string_view>  // for string_view
#include <vector>       // for vector

#include "smbalg/algebra.hpp"
#include "smbalg/partition.hpp"

namespace smbalg {

  //! {0,1,2}: d(x,y,z) = x+y+z mod 2 when 2 is not an argument, else 2;
  //! x wedge y = d(x,x,y).
  FiniteAlgebra example_e3();

  //! {0,1}: d = x xor y xor z, wedge = second projection.
  FiniteAlgebra example_b2();

  //! {0,1}: wedge = min, d = (x wedge y) wedge z.
  FiniteAlgebra example_s2();

  //! Two Z2 blocks {0,1} above {2,3} glued with the cross-class wedge and d
  //! sent to 3; SMB but not regular.
  FiniteAlgebra example_n4();

  //! One element, with wedge and d.
  FiniteAlgebra trivial_algebra();

  //! Z_m with d = x - y + z and wedge = second projection.
  FiniteAlgebra affine_block(std::size_t m);

  //! The chain 0 < 1 < ... < m-1 with wedge = min and d = (x wedge y) wedge z.
  FiniteAlgebra chain_semilattice(std::size_t m);

  //! A meet-semilattice given by its meet table, with d = (x wedge y) wedge z.
  FiniteAlgebra semilattice_algebra(std::string name, OperationTable meet);

  //! Extends a wnu algebra by three elements zero, s, a_{n+1} (appended in
  //! that order) to a simple algebra with one wnu operation v = "w" of the
  //! same arity.  Throws HypothesisError unless w is a wnu of arity >= 3 and
  //! TheoremFalsified if the result is not simple or v is not a wnu.
  FiniteAlgebra extend_simple_type5(FiniteAlgebra const& alg, std::string_view symbol);

  struct GlueOptions {
    //! wedge(a,b) = b whenever [b] <= [a]; otherwise only inside a class.
    bool absorb_below = true;
  };

  //! Disjoint union of \p blocks indexed by the elements of \p semilattice
  //! (its "wedge" must be a semilattice).  Inside a class wedge is the second
  //! projection and d is the block's d; across classes both go to
  //! reps[meet of the classes] (reps are global element numbers), except that
  //! with absorb_below wedge(a,b) = b when [b] <= [a].  Throws InvalidAlgebra
  //! for a bad semilattice, block or rep, and TheoremFalsified if the result
  //! is not SMB over the block partition.
  FiniteAlgebra glue_smb(FiniteAlgebra const&              semilattice,
                         std::vector<FiniteAlgebra> const& blocks,
                         std::vector<Elem> const&          reps,
                         GlueOptions const&                options = {});

  //! The block partition of a glued algebra.
  Partition block_partition(std::vector<FiniteAlgebra> const& blocks);

  //! Uniformly random tables.
  FiniteAlgebra random_algebra(std::size_t n, Signature const& signature, std::uint64_t seed);

  //! Every algebra with universe size n and the given signature, in a fixed
  //! order (the last operation's table varies fastest).  Throws CapExceeded
  //! beyond max_count algebras.
  class AlgebraEnumerator {
   public:
    AlgebraEnumerator(std::size_t      n,
                      Signature const& signature,
                      std::uint64_t    max_count = std::uint64_t(1) << 20);

    std::uint64_t count() const noexcept {
      return _count;
    }
    FiniteAlgebra operator[](std::uint64_t i) const;

   private:
    std::size_t                                     _n;
    std::vector<std::pair<std::string, std::size_t>> _ops;
    std::vector<std::size_t>                        _table_sizes;
    std::uint64_t                                   _count = 1;
  };

  //! Same as AlgebraEnumerator(n, signature); at n = 2 with binary wedge and
  //! ternary d this is 4096 algebras.
  AlgebraEnumerator exhaustive_enumerate(std::size_t n, Signature const& signature);

  struct CorpusSpec {
    std::uint64_t seed     = 1;
    std::size_t   min_size = 1;
    std::size_t   max_size = 6;
    //! Any of "builtin", "semilattice", "affine", "glued", "regular",
    //! "random".
    std::vector<std::string> families{"builtin", "semilattice", "affine", "glued", "regular"};
    //! Random algebras and glued algebras per family.
    std::size_t per_family = 12;
  };

  //! Deterministic for a given spec.  Names are unique.
  std::vector<FiniteAlgebra> generate_corpus(CorpusSpec const& spec);

  //! Every regular SMB algebra of the corpus families (builtins other than
  //! N4, semilattices, affine blocks, and regularized glued algebras).
  std::vector<FiniteAlgebra> regular_corpus(std::uint64_t seed, std::size_t max_size);

  //! Glued algebras that fail the regular base.
  std::vector<FiniteAlgebra> nonregular_glued(std::uint64_t seed,
                                              std::size_t   max_size,
                                              std::size_t   count);

  //! Non-empty subuniverses as sorted element lists.  Throws CapExceeded
  //! for |A| > max_universe.
  std::vector<std::vector<Elem>> subuniverses(FiniteAlgebra const& alg,
                                              std::size_t          max_universe = 12);

  //! The subalgebra on a subuniverse, elements renumbered in increasing
  //! order.  Throws InvalidAlgebra if \p elems is not closed.
  FiniteAlgebra subalgebra(FiniteAlgebra const& alg, std::vector<Elem> const& elems);

  //! A x B with (a,b) numbered a*|B| + b.  Both must have the same
  //! signature.  Throws CapExceeded above max_size elements.
  FiniteAlgebra product(FiniteAlgebra const& a, FiniteAlgebra const& b, std::size_t max_size = 64);

}  // namespace smbalg
