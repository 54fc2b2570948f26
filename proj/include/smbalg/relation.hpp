#pragma once

#include <cstddef>  // for size_t
#include <utility>  // for pair
#include <vector>   // for vector

#include "smbalg/algebra.hpp"
#include "smbalg/partition.hpp"

namespace smbalg {

  //! A binary relation on {0..n-1} stored as an n x n bit matrix.
  class BinaryRelation {
   public:
    BinaryRelation() = default;
    explicit BinaryRelation(std::size_t n) : _n(n), _bits(n * n, false) {}

    static BinaryRelation diagonal(std::size_t n);
    static BinaryRelation full(std::size_t n);
    static BinaryRelation from_partition(Partition const& p);
    static BinaryRelation from_pairs(std::size_t n,
                                     std::vector<std::pair<Elem, Elem>> const& pairs);

    std::size_t size() const noexcept {
      return _n;
    }
    bool contains(Elem a, Elem b) const noexcept {
      return _bits[a * _n + b];
    }
    void insert(Elem a, Elem b) {
      _bits[a * _n + b] = true;
    }

    //! Pairs in lexicographic order.
    std::vector<std::pair<Elem, Elem>> pairs() const;
    std::size_t                        count() const;

    bool is_reflexive() const;
    bool is_symmetric() const;
    bool is_transitive() const;
    bool is_equivalence() const {
      return is_reflexive() && is_symmetric() && is_transitive();
    }
    bool is_subset_of(BinaryRelation const& other) const;

    bool operator==(BinaryRelation const&) const = default;

   private:
    std::size_t       _n = 0;
    std::vector<bool> _bits;
  };

  //! {(x,z) : (x,y) in R and (y,z) in S for some y}.  Throws InvalidAlgebra
  //! if the universes differ.
  BinaryRelation compose_relations(BinaryRelation const& r, BinaryRelation const& s);

  //! Smallest equivalence relation containing \p r.
  Partition equivalence_closure(BinaryRelation const& r);

}  // namespace smbalg
