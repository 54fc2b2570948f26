#pragma once

#include <cstddef>      // for size_t
#include <span>         // for span
#include <string>       // for string
#include <string_view>  // for string_view
#include <vector>       // for vector

#include "smbalg/algebra.hpp"

namespace smbalg {

  //! An equivalence relation on {0..n-1} in canonical class-id form.
  //!
  //! Class ids appear in increasing order of first occurrence, so
  //! class_ids()[0] == 0 and each new id is one more than the previous
  //! maximum.  Equal partitions therefore have equal id vectors.
  class Partition {
   public:
    Partition() = default;

    //! Canonicalises an arbitrary labelling (equal labels = same class).
    explicit Partition(std::span<std::size_t const> labels);
    explicit Partition(std::vector<std::size_t> const& labels)
        : Partition(std::span<std::size_t const>(labels)) {}

    //! 0_A, the identity relation.
    static Partition discrete(std::size_t n);
    //! 1_A, a single class.
    static Partition full(std::size_t n);
    //! Throws InvalidAlgebra unless \p classes partition {0..n-1}.
    static Partition from_classes(std::size_t n, std::vector<std::vector<Elem>> const& classes);

    std::size_t size() const noexcept {
      return _ids.size();
    }
    std::size_t num_classes() const noexcept {
      return _num_classes;
    }
    std::size_t class_of(Elem x) const noexcept {
      return _ids[x];
    }
    std::span<std::size_t const> class_ids() const noexcept {
      return _ids;
    }
    bool related(Elem a, Elem b) const noexcept {
      return _ids[a] == _ids[b];
    }

    //! Classes in id order, elements ascending.
    std::vector<std::vector<Elem>> classes() const;
    //! Least element of each class, in id order.
    std::vector<Elem> representatives() const;

    bool is_discrete() const noexcept {
      return _num_classes == _ids.size();
    }
    bool is_full() const noexcept {
      return _num_classes <= 1;
    }

    //! this is contained in \p other as a relation.
    bool refines(Partition const& other) const;

    bool operator==(Partition const& other) const = default;
    //! Lexicographic on class ids; only used for deterministic ordering.
    auto operator<=>(Partition const& other) const = default;

   private:
    std::vector<std::size_t> _ids;
    std::size_t              _num_classes = 0;
  };

  //! Transitive closure of the union.  Throws InvalidAlgebra on size mismatch.
  Partition join_partitions(Partition const& p, Partition const& q);
  //! Common refinement.  Throws InvalidAlgebra on size mismatch.
  Partition meet_partitions(Partition const& p, Partition const& q);

  //! Canonical text form: classes ordered by least element, separated by
  //! "|", elements by spaces, e.g. "0 1 | 2".
  std::string to_string(Partition const& p);

  //! Parses the text form.  The classes must cover {0..n-1} exactly.
  //! Throws ParseError.
  Partition parse_partition(std::string_view text, std::size_t n);

  namespace detail {
    //! Union-find with path halving.
    class DisjointSets {
     public:
      explicit DisjointSets(std::size_t n);
      std::size_t find(std::size_t x);
      //! Returns true if x and y were in different sets.
      bool      unite(std::size_t x, std::size_t y);
      Partition partition();

     private:
      std::vector<std::size_t> _parent;
    };
  }  // namespace detail

}  // namespace smbalg
