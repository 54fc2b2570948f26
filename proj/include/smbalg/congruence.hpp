#pragma once

#include <cstddef>   // for size_t
#include <map>       // for map
#include <optional>  // for optional
#include <string>    // for string
#include <utility>   // for pair
#include <vector>    // for vector

#include "smbalg/algebra.hpp"
#include "smbalg/partition.hpp"
#include "smbalg/relation.hpp"
#include "smbalg/subpower.hpp"
#include "smbalg/term.hpp"

namespace smbalg {

  //! Two argument tuples that are related coordinatewise but whose images
  //! are not.
  struct CongruenceViolation {
    std::string       symbol;
    std::vector<Elem> lhs;
    std::vector<Elem> rhs;
  };

  std::string to_string(CongruenceViolation const& v);

  //! Least failing pair of tuples (differing in one position), if any.
  std::optional<CongruenceViolation> congruence_violation(FiniteAlgebra const& alg,
                                                          Partition const&     theta);

  bool is_congruence(FiniteAlgebra const& alg, Partition const& theta);

  //! Least congruence containing every pair.
  Partition congruence_generated(FiniteAlgebra const&                      alg,
                                 std::vector<std::pair<Elem, Elem>> const& pairs);

  //! Least congruence containing \p theta and every pair.
  Partition congruence_generated(FiniteAlgebra const&                      alg,
                                 Partition const&                          theta,
                                 std::vector<std::pair<Elem, Elem>> const& pairs);

  //! Cg(a,b).
  Partition principal_congruence(FiniteAlgebra const& alg, Elem a, Elem b);

  struct LatticeOptions {
    std::size_t max_universe = 10;
  };

  struct CongruenceLattice {
    //! 0_A first, 1_A last, otherwise ordered by decreasing number of classes.
    std::vector<Partition> elements;
    //! (i, j) with elements[i] covered by elements[j].
    std::vector<std::pair<std::size_t, std::size_t>> covers;

    std::optional<std::size_t> index_of(Partition const& p) const;
  };

  //! Con A, computed as the join closure of the principal congruences.
  //! Throws CapExceeded above options.max_universe.
  CongruenceLattice congruence_lattice(FiniteAlgebra const& alg, LatticeOptions const& options = {});

  struct Quotient {
    FiniteAlgebra algebra;
    //! class_map[x] is the element of the quotient containing x.
    std::vector<Elem> class_map;
  };

  //! A/theta with tables induced through class representatives.
  //! Throws NotCongruence naming a violating operation and tuple pair.
  Quotient quotient_algebra(FiniteAlgebra const& alg, Partition const& theta);

  //! Subuniverse of A^2 generated by (a,b), (b,a) and the diagonal, in that
  //! generator order.
  GeneratedSet d_rel(FiniteAlgebra const& alg, Elem a, Elem b);

  BinaryRelation to_relation(GeneratedSet const& gs);

  struct UnaryPolynomials {
    //! maps[i][x] is the image of x.
    std::vector<std::vector<Elem>> maps;
    //! One unary polynomial (variable 0, constants as literals) per map.
    std::vector<Term> witnesses;
  };

  //! Pol1 A as the subuniverse of A^A generated by the identity and the
  //! constants.  Throws CapExceeded if |A| > max_universe.
  UnaryPolynomials unary_polynomials(FiniteAlgebra const& alg, std::size_t max_universe = 8);

  //! The subset M(alpha, beta) of A^4 used for the term condition, a tuple
  //! (m11, m12, m21, m22) read as a 2x2 matrix with alpha varying down the
  //! columns and beta along the rows.
  GeneratedSet commutator_matrices(FiniteAlgebra const& alg,
                                   Partition const&     alpha,
                                   Partition const&     beta);

  //! [alpha, beta].  Throws NotCongruence on bad input.
  Partition commutator(FiniteAlgebra const& alg, Partition const& alpha, Partition const& beta);

  bool is_abelian(FiniteAlgebra const& alg, Partition const& alpha);

  //! Memoizes congruence computations for one algebra.  The algebra must
  //! outlive the cache.  Not thread safe.
  class CongruenceCache {
   public:
    explicit CongruenceCache(FiniteAlgebra const& alg) : _alg(&alg) {}

    FiniteAlgebra const& algebra() const noexcept {
      return *_alg;
    }

    Partition const&         principal(Elem a, Elem b);
    Partition const&         commutator(Partition const& alpha, Partition const& beta);
    CongruenceLattice const& lattice(LatticeOptions const& options = {});
    UnaryPolynomials const&  unary_polynomials(std::size_t max_universe = 8);

   private:
    FiniteAlgebra const*                                 _alg;
    std::map<std::pair<Elem, Elem>, Partition>           _principal;
    std::map<std::pair<Partition, Partition>, Partition> _commutator;
    std::optional<CongruenceLattice>                     _lattice;
    std::optional<UnaryPolynomials>                      _pol1;
  };

}  // namespace smbalg
