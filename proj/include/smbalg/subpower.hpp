#pragma once

#include <cstddef>        // for size_t
#include <cstdint>        // for uint32_t, uint64_t
#include <optional>       // for optional
#include <span>           // for span
#include <string>         // for string
#include <unordered_map>  // for unordered_map
#include <vector>         // for vector

#include "smbalg/algebra.hpp"
#include "smbalg/term.hpp"

namespace smbalg {

  struct SubpowerOptions {
    //! Throw CapExceeded once the generated set would exceed this many tuples.
    std::size_t max_elements = std::size_t(1) << 24;
  };

  //! A subuniverse of A^k together with a derivation for every tuple.
  //!
  //! Tuples are numbered in the order they were found.  The first
  //! num_generators() tuples are the (deduplicated) generators; every later
  //! tuple records the operation and the parent tuple indices it came from.
  class GeneratedSet {
   public:
    std::size_t power() const noexcept {
      return _k;
    }
    std::size_t universe_size() const noexcept {
      return _n;
    }
    std::size_t size() const noexcept {
      return _codes.size();
    }
    std::size_t num_generators() const noexcept {
      return _num_generators;
    }

    std::vector<Elem> element(std::size_t i) const;
    std::vector<std::vector<Elem>> elements() const;

    bool is_generator(std::size_t i) const noexcept {
      return i < _num_generators;
    }
    //! For a generator, the position it had in the caller's list.
    std::size_t generator_origin(std::size_t i) const noexcept {
      return _generator_origin[i];
    }
    //! Operation symbol of a derived tuple; empty for generators.
    std::string const& symbol(std::size_t i) const;
    std::span<std::size_t const> parents(std::size_t i) const;

    std::optional<std::size_t> find(std::span<Elem const> tuple) const;
    bool contains(std::span<Elem const> tuple) const {
      return find(tuple).has_value();
    }

    //! Term over the generators: the generator at caller position j is
    //! replaced by generator_terms[j].  Shared derivations share subterms.
    Term witness(std::size_t i, std::span<Term const> generator_terms) const;

   private:
    friend GeneratedSet generate_subpower(FiniteAlgebra const&,
                                          std::size_t,
                                          std::vector<std::vector<Elem>> const&,
                                          SubpowerOptions const&);

    std::uint64_t encode(std::span<Elem const> tuple) const;
    std::size_t   insert(std::uint64_t code);  // returns index or npos if present
    std::optional<std::size_t> lookup(std::uint64_t code) const;

    std::size_t                                   _k = 0;
    std::size_t                                   _n = 0;
    std::size_t                                   _num_generators = 0;
    std::vector<std::uint64_t>                    _codes;
    std::vector<std::size_t>                      _generator_origin;
    std::vector<std::uint32_t>                    _op;  // per derived tuple
    std::vector<std::size_t>                      _parent_begin;
    std::vector<std::size_t>                      _parents;
    std::vector<std::string>                      _symbols;
    bool                                          _dense = true;
    std::vector<std::uint32_t>                    _dense_index;  // 0 = absent
    std::unordered_map<std::uint64_t, std::size_t> _sparse_index;
  };

  //! Least subset of A^k containing \p generators and closed under every
  //! operation applied coordinatewise.  Generators come first in the given
  //! order, then tuples are found breadth first, operations in symbol order.
  //! Throws InvalidAlgebra on malformed tuples, CapExceeded if n^k does not
  //! fit in 62 bits or the set outgrows options.max_elements.
  GeneratedSet generate_subpower(FiniteAlgebra const&                  alg,
                                 std::size_t                           k,
                                 std::vector<std::vector<Elem>> const& generators,
                                 SubpowerOptions const&                options = {});

  //! Recomputes tuple \p i from its trace alone.
  std::vector<Elem> replay(FiniteAlgebra const& alg, GeneratedSet const& gs, std::size_t i);

}  // namespace smbalg
