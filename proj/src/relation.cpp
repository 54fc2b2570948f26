#include "smbalg/relation.hpp"

#include "smbalg/errors.hpp"

namespace smbalg {

  BinaryRelation BinaryRelation::diagonal(std::size_t n) {
    BinaryRelation r(n);
    for (Elem x = 0; x < n; ++x) {
      r.insert(x, x);
    }
    return r;
  }

  BinaryRelation BinaryRelation::full(std::size_t n) {
    BinaryRelation r(n);
    r._bits.assign(n * n, true);
    return r;
  }

  BinaryRelation BinaryRelation::from_partition(Partition const& p) {
    std::size_t const n = p.size();
    BinaryRelation    r(n);
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        if (p.related(x, y)) {
          r.insert(x, y);
        }
      }
    }
    return r;
  }

  BinaryRelation BinaryRelation::from_pairs(std::size_t                               n,
                                            std::vector<std::pair<Elem, Elem>> const& pairs) {
    BinaryRelation r(n);
    for (auto const& [a, b] : pairs) {
      if (a >= n || b >= n) {
        throw InvalidAlgebra("pair outside universe of size " + std::to_string(n));
      }
      r.insert(a, b);
    }
    return r;
  }

  std::vector<std::pair<Elem, Elem>> BinaryRelation::pairs() const {
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem x = 0; x < _n; ++x) {
      for (Elem y = 0; y < _n; ++y) {
        if (contains(x, y)) {
          out.emplace_back(x, y);
        }
      }
    }
    return out;
  }

  std::size_t BinaryRelation::count() const {
    std::size_t c = 0;
    for (bool b : _bits) {
      c += b ? 1 : 0;
    }
    return c;
  }

  bool BinaryRelation::is_reflexive() const {
    for (Elem x = 0; x < _n; ++x) {
      if (!contains(x, x)) {
        return false;
      }
    }
    return true;
  }

  bool BinaryRelation::is_symmetric() const {
    for (Elem x = 0; x < _n; ++x) {
      for (Elem y = x + 1; y < _n; ++y) {
        if (contains(x, y) != contains(y, x)) {
          return false;
        }
      }
    }
    return true;
  }

  bool BinaryRelation::is_transitive() const {
    return compose_relations(*this, *this).is_subset_of(*this);
  }

  bool BinaryRelation::is_subset_of(BinaryRelation const& other) const {
    if (_n != other._n) {
      return false;
    }
    for (std::size_t i = 0; i < _bits.size(); ++i) {
      if (_bits[i] && !other._bits[i]) {
        return false;
      }
    }
    return true;
  }

  BinaryRelation compose_relations(BinaryRelation const& r, BinaryRelation const& s) {
    if (r.size() != s.size()) {
      throw InvalidAlgebra("composition of relations on different universes");
    }
    std::size_t const n = r.size();
    BinaryRelation    out(n);
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        if (!r.contains(x, y)) {
          continue;
        }
        for (Elem z = 0; z < n; ++z) {
          if (s.contains(y, z)) {
            out.insert(x, z);
          }
        }
      }
    }
    return out;
  }

  Partition equivalence_closure(BinaryRelation const& r) {
    detail::DisjointSets sets(r.size());
    for (auto const& [a, b] : r.pairs()) {
      sets.unite(a, b);
    }
    return sets.partition();
  }

}  // namespace smbalg
