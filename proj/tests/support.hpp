#pragma once

#include <iterator>  // for next
#include <vector>    // for vector

#include "oracles/oracles.hpp"
#include "smbalg/partition.hpp"

namespace smbalg::test {

  inline oracle::Ids ids(Partition const& p) {
    return oracle::normalize({p.class_ids().begin(), p.class_ids().end()});
  }

  inline Partition partition(oracle::Ids const& ids) {
    return Partition(ids);
  }

  inline Signature smb_signature() {
    return {{"d", 3}, {"wedge", 2}};
  }

}  // namespace smbalg::test

#include <random>  // for mt19937_64, uniform_int_distribution

#include "smbalg/term.hpp"

namespace smbalg::test {

  //! Random term over \p sig with variables below num_vars.
  inline Term random_term(std::mt19937_64& rng, Signature const& sig, std::size_t num_vars,
                          std::size_t depth) {
    std::uniform_int_distribution<std::size_t> pick(0, sig.size() + 1);
    std::size_t const                          choice = pick(rng);
    if (depth == 0 || choice >= sig.size()) {
      return Term::var(std::uniform_int_distribution<std::size_t>(0, num_vars - 1)(rng));
    }
    auto it = std::next(sig.begin(), static_cast<std::ptrdiff_t>(choice));
    std::vector<Term> args;
    for (std::size_t i = 0; i < it->second; ++i) {
      args.push_back(random_term(rng, sig, num_vars, depth - 1));
    }
    return Term::apply(it->first, std::move(args));
  }

}  // namespace smbalg::test
