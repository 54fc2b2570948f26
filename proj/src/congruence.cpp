#include "smbalg/congruence.hpp"

#include <algorithm>  // for sort, find
#include <set>        // for set

#include "smbalg/errors.hpp"

namespace smbalg {

  namespace {
    std::string tuple_string(std::vector<Elem> const& t) {
      std::string out = "(";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i != 0) {
          out += ',';
        }
        out += std::to_string(t[i]);
      }
      return out + ")";
    }

    std::vector<Elem> decode(std::size_t index, std::size_t arity, std::size_t n) {
      std::vector<Elem> out(arity);
      for (std::size_t j = arity; j-- > 0;) {
        out[j] = static_cast<Elem>(index % n);
        index /= n;
      }
      return out;
    }

    void check_size(FiniteAlgebra const& alg, Partition const& p, char const* what) {
      if (p.size() != alg.size()) {
        throw InvalidAlgebra(std::string(what) + " has size " + std::to_string(p.size())
                             + " but the algebra has size " + std::to_string(alg.size()));
      }
    }

    void require_congruence(FiniteAlgebra const& alg, Partition const& p, char const* what) {
      check_size(alg, p, what);
      if (auto v = congruence_violation(alg, p)) {
        throw NotCongruence(std::string(what) + " is not a congruence: " + to_string(*v));
      }
    }
  }  // namespace

  std::string to_string(CongruenceViolation const& v) {
    return "operation '" + v.symbol + "' maps related tuples " + tuple_string(v.lhs) + " and "
           + tuple_string(v.rhs) + " to unrelated elements";
  }

  std::optional<CongruenceViolation> congruence_violation(FiniteAlgebra const& alg,
                                                          Partition const&     theta) {
    check_size(alg, theta, "partition");
    std::size_t const n    = alg.size();
    auto const        reps = theta.representatives();
    for (auto const& [sym, f] : alg.operations()) {
      std::size_t const r     = f.arity();
      std::size_t       total = f.entries().size();
      for (std::size_t index = 0; index < total; ++index) {
        std::size_t stride = 1;
        for (std::size_t pos = r; pos-- > 0;) {
          Elem const x = static_cast<Elem>((index / stride) % n);
          Elem const y = reps[theta.class_of(x)];
          if (x != y) {
            std::size_t const other = index - x * stride + y * stride;
            if (!theta.related(f.at_index(index), f.at_index(other))) {
              auto lhs = decode(other, r, n);
              auto rhs = decode(index, r, n);
              return CongruenceViolation{sym, std::move(lhs), std::move(rhs)};
            }
          }
          stride *= n;
        }
      }
    }
    return std::nullopt;
  }

  bool is_congruence(FiniteAlgebra const& alg, Partition const& theta) {
    return !congruence_violation(alg, theta).has_value();
  }

  Partition congruence_generated(FiniteAlgebra const&                      alg,
                                 Partition const&                          theta,
                                 std::vector<std::pair<Elem, Elem>> const& pairs) {
    check_size(alg, theta, "partition");
    std::size_t const                  n = alg.size();
    detail::DisjointSets               sets(n);
    std::vector<std::pair<Elem, Elem>> work;
    auto                               add = [&](Elem a, Elem b) {
      if (sets.unite(a, b)) {
        work.emplace_back(a, b);
      }
    };
    auto const reps = theta.representatives();
    for (Elem x = 0; x < n; ++x) {
      add(reps[theta.class_of(x)], x);
    }
    for (auto const& [a, b] : pairs) {
      if (a >= n || b >= n) {
        throw InvalidAlgebra("pair outside universe of size " + std::to_string(n));
      }
      add(a, b);
    }
    // Closing the spanning pairs of the union-find forest under basic
    // translations is enough: translations carry chains to chains.
    while (!work.empty()) {
      auto const [a, b] = work.back();
      work.pop_back();
      for (auto const& [sym, f] : alg.operations()) {
        std::size_t const r = f.arity();
        std::size_t       stride = 1;  // n^(r-1-pos)
        for (std::size_t pos = r; pos-- > 0;) {
          std::size_t const block = stride * n;
          std::size_t const total = f.entries().size();
          for (std::size_t hi = 0; hi < total; hi += block) {
            for (std::size_t lo = 0; lo < stride; ++lo) {
              std::size_t const base = hi + lo;
              add(f.at_index(base + a * stride), f.at_index(base + b * stride));
            }
          }
          stride = block;
        }
      }
    }
    return sets.partition();
  }

  Partition congruence_generated(FiniteAlgebra const&                      alg,
                                 std::vector<std::pair<Elem, Elem>> const& pairs) {
    return congruence_generated(alg, Partition::discrete(alg.size()), pairs);
  }

  Partition principal_congruence(FiniteAlgebra const& alg, Elem a, Elem b) {
    if (a >= alg.size() || b >= alg.size()) {
      throw InvalidAlgebra("element outside universe of size " + std::to_string(alg.size()));
    }
    return congruence_generated(alg, {{a, b}});
  }

  std::optional<std::size_t> CongruenceLattice::index_of(Partition const& p) const {
    auto it = std::find(elements.begin(), elements.end(), p);
    if (it == elements.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - elements.begin());
  }

  CongruenceLattice congruence_lattice(FiniteAlgebra const& alg, LatticeOptions const& options) {
    std::size_t const n = alg.size();
    if (n > options.max_universe) {
      throw CapExceeded("congruence lattice of an algebra of size " + std::to_string(n)
                        + " exceeds the cap of " + std::to_string(options.max_universe));
    }
    std::set<Partition> found;
    found.insert(Partition::discrete(n));
    std::vector<Partition> principals;
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = a + 1; b < n; ++b) {
        auto p = principal_congruence(alg, a, b);
        if (found.insert(p).second) {
          principals.push_back(std::move(p));
        }
      }
    }
    // Every congruence is a join of principal ones; extend joins one
    // principal at a time until nothing new appears.
    std::vector<Partition> frontier(principals);
    while (!frontier.empty()) {
      std::vector<Partition> next;
      for (auto const& p : frontier) {
        for (auto const& q : principals) {
          auto j = join_partitions(p, q);
          if (found.insert(j).second) {
            next.push_back(std::move(j));
          }
        }
      }
      frontier = std::move(next);
    }
    CongruenceLattice lat;
    lat.elements.assign(found.begin(), found.end());
    std::sort(lat.elements.begin(), lat.elements.end(), [](auto const& p, auto const& q) {
      if (p.num_classes() != q.num_classes()) {
        return p.num_classes() > q.num_classes();
      }
      return p < q;
    });
    auto const& el = lat.elements;
    for (std::size_t i = 0; i < el.size(); ++i) {
      for (std::size_t j = 0; j < el.size(); ++j) {
        if (i == j || !el[i].refines(el[j])) {
          continue;
        }
        bool cover = true;
        for (std::size_t m = 0; m < el.size() && cover; ++m) {
          if (m != i && m != j && el[i].refines(el[m]) && el[m].refines(el[j])) {
            cover = false;
          }
        }
        if (cover) {
          lat.covers.emplace_back(i, j);
        }
      }
    }
    return lat;
  }

  Quotient quotient_algebra(FiniteAlgebra const& alg, Partition const& theta) {
    require_congruence(alg, theta, "partition");
    std::size_t const        m    = theta.num_classes();
    auto const               reps = theta.representatives();
    FiniteAlgebra::Operations ops;
    for (auto const& [sym, f] : alg.operations()) {
      std::vector<Elem> args(f.arity());
      ops.emplace(sym, OperationTable::tabulate(f.arity(), m, [&](std::span<Elem const> cls) {
                    for (std::size_t i = 0; i < cls.size(); ++i) {
                      args[i] = reps[cls[i]];
                    }
                    return theta.class_of(f(args));
                  }));
    }
    Quotient q;
    q.algebra = FiniteAlgebra(alg.name() + "/" + to_string(theta), m, std::move(ops));
    q.class_map.resize(alg.size());
    for (Elem x = 0; x < alg.size(); ++x) {
      q.class_map[x] = static_cast<Elem>(theta.class_of(x));
    }
    return q;
  }

  GeneratedSet d_rel(FiniteAlgebra const& alg, Elem a, Elem b) {
    if (a >= alg.size() || b >= alg.size()) {
      throw InvalidAlgebra("element outside universe of size " + std::to_string(alg.size()));
    }
    std::vector<std::vector<Elem>> gens{{a, b}, {b, a}};
    for (Elem c = 0; c < alg.size(); ++c) {
      gens.push_back({c, c});
    }
    return generate_subpower(alg, 2, gens);
  }

  BinaryRelation to_relation(GeneratedSet const& gs) {
    if (gs.power() != 2) {
      throw InvalidAlgebra("only subpowers of A^2 are binary relations");
    }
    BinaryRelation r(gs.universe_size());
    for (std::size_t i = 0; i < gs.size(); ++i) {
      auto const t = gs.element(i);
      r.insert(t[0], t[1]);
    }
    return r;
  }

  UnaryPolynomials unary_polynomials(FiniteAlgebra const& alg, std::size_t max_universe) {
    std::size_t const n = alg.size();
    if (n > max_universe) {
      throw CapExceeded("unary polynomials of an algebra of size " + std::to_string(n)
                        + " exceed the cap of " + std::to_string(max_universe));
    }
    std::vector<std::vector<Elem>> gens;
    std::vector<Term>              terms;
    std::vector<Elem>              id(n);
    for (Elem x = 0; x < n; ++x) {
      id[x] = x;
    }
    gens.push_back(id);
    terms.push_back(Term::var(0));
    for (Elem c = 0; c < n; ++c) {
      gens.emplace_back(n, c);
      terms.push_back(Term::constant(c));
    }
    auto const       gs = generate_subpower(alg, n, gens);
    UnaryPolynomials out;
    out.maps      = gs.elements();
    out.witnesses.reserve(gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i) {
      out.witnesses.push_back(gs.witness(i, terms));
    }
    return out;
  }

  GeneratedSet commutator_matrices(FiniteAlgebra const& alg,
                                   Partition const&     alpha,
                                   Partition const&     beta) {
    check_size(alg, alpha, "alpha");
    check_size(alg, beta, "beta");
    std::size_t const              n = alg.size();
    std::vector<std::vector<Elem>> gens;
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        if (alpha.related(x, y)) {
          gens.push_back({x, x, y, y});
        }
      }
    }
    for (Elem u = 0; u < n; ++u) {
      for (Elem v = 0; v < n; ++v) {
        if (beta.related(u, v) && u != v) {
          gens.push_back({u, v, u, v});
        }
      }
    }
    return generate_subpower(alg, 4, gens);
  }

  Partition commutator(FiniteAlgebra const& alg, Partition const& alpha, Partition const& beta) {
    require_congruence(alg, alpha, "alpha");
    require_congruence(alg, beta, "beta");
    auto const matrices = commutator_matrices(alg, alpha, beta).elements();
    Partition  delta    = Partition::discrete(alg.size());
    // The one-step value need not satisfy the term condition itself, so
    // iterate to the least fixpoint.
    while (true) {
      std::vector<std::pair<Elem, Elem>> pairs;
      for (auto const& m : matrices) {
        if (delta.related(m[0], m[1]) && !delta.related(m[2], m[3])) {
          pairs.emplace_back(m[2], m[3]);
        }
      }
      if (pairs.empty()) {
        return delta;
      }
      delta = congruence_generated(alg, delta, pairs);
    }
  }

  bool is_abelian(FiniteAlgebra const& alg, Partition const& alpha) {
    return commutator(alg, alpha, alpha).is_discrete();
  }

  Partition const& CongruenceCache::principal(Elem a, Elem b) {
    auto key = std::minmax(a, b);
    auto it  = _principal.find(key);
    if (it == _principal.end()) {
      it = _principal.emplace(key, principal_congruence(*_alg, a, b)).first;
    }
    return it->second;
  }

  Partition const& CongruenceCache::commutator(Partition const& alpha, Partition const& beta) {
    auto key = std::make_pair(alpha, beta);
    auto it  = _commutator.find(key);
    if (it == _commutator.end()) {
      it = _commutator.emplace(key, smbalg::commutator(*_alg, alpha, beta)).first;
    }
    return it->second;
  }

  CongruenceLattice const& CongruenceCache::lattice(LatticeOptions const& options) {
    if (!_lattice) {
      _lattice = congruence_lattice(*_alg, options);
    }
    return *_lattice;
  }

  UnaryPolynomials const& CongruenceCache::unary_polynomials(std::size_t max_universe) {
    if (!_pol1) {
      _pol1 = smbalg::unary_polynomials(*_alg, max_universe);
    }
    return *_pol1;
  }

}  // namespace smbalg
