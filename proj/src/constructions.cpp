#include "smbalg/constructions.hpp"

#include <algorithm>  // for sort, find
#include <random>     // for mt19937_64, uniform_int_distribution
#include <set>        // for set

#include "smbalg/analyzer.hpp"
#include "smbalg/congruence.hpp"
#include "smbalg/errors.hpp"
#include "smbalg/identity.hpp"
#include "smbalg/wnu.hpp"

namespace smbalg {

  namespace {
    std::string const kW(kWedge);
    std::string const kD(kMalcev);

    OperationTable second_projection(std::size_t n) {
      return OperationTable::tabulate(2, n, [](std::span<Elem const> v) { return v[1]; });
    }

    OperationTable meet_d(OperationTable const& m) {
      return OperationTable::tabulate(3, m.size(), [&](std::span<Elem const> v) {
        return m({m({v[0], v[1]}), v[2]});
      });
    }

    Elem random_below(std::mt19937_64& rng, std::size_t bound) {
      return static_cast<Elem>(std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng));
    }

    // Tree-shaped meet-semilattice: element 0 is the bottom and every other
    // element sits directly above a smaller parent; meet = common ancestor.
    OperationTable random_tree_meet(std::size_t m, std::mt19937_64& rng) {
      std::vector<Elem> parent(m, 0);
      for (std::size_t i = 1; i < m; ++i) {
        parent[i] = random_below(rng, i);
      }
      auto ancestors = [&](Elem x) {
        std::vector<Elem> out{x};
        while (x != 0) {
          x = parent[x];
          out.push_back(x);
        }
        return out;
      };
      return OperationTable::tabulate(2, m, [&](std::span<Elem const> v) {
        auto const ax = ancestors(v[0]);
        for (Elem y : ancestors(v[1])) {
          if (std::find(ax.begin(), ax.end(), y) != ax.end()) {
            return y;
          }
        }
        return Elem(0);
      });
    }

    // Meet-semilattice of an intersection-closed family of subsets of a
    // 3-element set, elements numbered by first appearance.  May come out
    // smaller than m.
    OperationTable random_family_meet(std::size_t m, std::mt19937_64& rng) {
      std::vector<unsigned> family{7};
      for (std::size_t attempt = 0; attempt < 32 && family.size() < m; ++attempt) {
        unsigned const s = static_cast<unsigned>(random_below(rng, 8));
        if (std::find(family.begin(), family.end(), s) != family.end()) {
          continue;
        }
        std::vector<unsigned> grown(family);
        grown.push_back(s);
        for (std::size_t i = 0; i < grown.size(); ++i) {
          for (std::size_t j = 0; j < i; ++j) {
            unsigned const t = grown[i] & grown[j];
            if (std::find(grown.begin(), grown.end(), t) == grown.end()) {
              grown.push_back(t);
            }
          }
        }
        if (grown.size() <= m) {
          family = std::move(grown);
        }
      }
      std::size_t const k = family.size();
      return OperationTable::tabulate(2, k, [&](std::span<Elem const> v) {
        unsigned const t = family[v[0]] & family[v[1]];
        return static_cast<Elem>(std::find(family.begin(), family.end(), t) - family.begin());
      });
    }

    bool is_semilattice(OperationTable const& m) {
      std::size_t const n = m.size();
      for (Elem x = 0; x < n; ++x) {
        if (m({x, x}) != x) {
          return false;
        }
        for (Elem y = 0; y < n; ++y) {
          if (m({x, y}) != m({y, x})) {
            return false;
          }
          for (Elem z = 0; z < n; ++z) {
            if (m({m({x, y}), z}) != m({x, m({y, z})})) {
              return false;
            }
          }
        }
      }
      return true;
    }
  }  // namespace

  FiniteAlgebra example_e3() {
    auto d = OperationTable::tabulate(3, 3, [](std::span<Elem const> v) -> Elem {
      if (v[0] == 2 || v[1] == 2 || v[2] == 2) {
        return 2;
      }
      return (v[0] + v[1] + v[2]) % 2;
    });
    auto w = OperationTable::tabulate(2, 3, [&](std::span<Elem const> v) {
      return d({v[0], v[0], v[1]});
    });
    return FiniteAlgebra("E3", 3, {{kW, std::move(w)}, {kD, std::move(d)}});
  }

  FiniteAlgebra example_b2() {
    auto d = OperationTable::tabulate(3, 2, [](std::span<Elem const> v) {
      return v[0] ^ v[1] ^ v[2];
    });
    return FiniteAlgebra("B2", 2, {{kW, second_projection(2)}, {kD, std::move(d)}});
  }

  FiniteAlgebra example_s2() {
    return chain_semilattice(2).renamed("S2");
  }

  FiniteAlgebra example_n4() {
    auto const top_bottom = OperationTable(2, 2, {0, 1, 1, 1});  // 1 is below 0
    FiniteAlgebra const sl("chain2", 2, {{kW, top_bottom}});
    auto z2 = affine_block(2);
    return glue_smb(sl, {z2, z2}, {0, 3}, GlueOptions{false}).renamed("N4");
  }

  FiniteAlgebra trivial_algebra() {
    return FiniteAlgebra("T1", 1, {{kW, OperationTable(2, 1, {0})}, {kD, OperationTable(3, 1, {0})}});
  }

  FiniteAlgebra affine_block(std::size_t m) {
    if (m == 0) {
      throw InvalidAlgebra("affine block needs at least one element");
    }
    auto d = OperationTable::tabulate(3, m, [m](std::span<Elem const> v) {
      return static_cast<Elem>((v[0] + m - v[1] + v[2]) % m);
    });
    return FiniteAlgebra("Z" + std::to_string(m), m, {{kW, second_projection(m)}, {kD, std::move(d)}});
  }

  FiniteAlgebra chain_semilattice(std::size_t m) {
    auto meet = OperationTable::tabulate(2, m, [](std::span<Elem const> v) {
      return std::min(v[0], v[1]);
    });
    return semilattice_algebra("C" + std::to_string(m), std::move(meet));
  }

  FiniteAlgebra semilattice_algebra(std::string name, OperationTable meet) {
    if (meet.arity() != 2 || !is_semilattice(meet)) {
      throw InvalidAlgebra("'" + name + "' is not given by a semilattice table");
    }
    auto d = meet_d(meet);
    std::size_t const n = meet.size();
    return FiniteAlgebra(std::move(name), n, {{kW, std::move(meet)}, {kD, std::move(d)}});
  }

  FiniteAlgebra extend_simple_type5(FiniteAlgebra const& alg, std::string_view symbol) {
    require_wnu(alg, symbol);
    OperationTable const& w = alg.op(symbol);
    std::size_t const     k = w.arity();
    if (k < 3) {
      throw HypothesisError("the simple extension needs a wnu of arity at least 3");
    }
    std::size_t const n     = alg.size();
    Elem const        zero  = static_cast<Elem>(n);
    Elem const        s     = static_cast<Elem>(n + 1);
    Elem const        a_top = static_cast<Elem>(n + 2);  // a_{n+1}
    // a_i is element i-1 for 1 <= i <= n
    auto circ = [&](Elem x, Elem y) -> Elem {
      if (x == s && y < n) {
        return y + 1 == n ? a_top : y + 1;
      }
      if (x < n && y == s) {
        return x + 1 == n ? a_top : x + 1;
      }
      if (x == a_top && y < n) {
        return a_top;
      }
      if (x < n && y == a_top) {
        return s;
      }
      if (x == s && y == a_top) {
        return zero;
      }
      if (x == a_top && y == s) {
        return 0;  // a_1
      }
      return zero;
    };
    auto v = OperationTable::tabulate(k, n + 3, [&](std::span<Elem const> xs) -> Elem {
      if (std::all_of(xs.begin(), xs.end(), [&](Elem x) { return x < n; })) {
        return w(xs);
      }
      if (std::all_of(xs.begin(), xs.end(), [&](Elem x) { return x == xs[0]; })) {
        return xs[0];
      }
      if (std::find(xs.begin(), xs.end(), zero) != xs.end()) {
        return zero;
      }
      // exactly one dissident coordinate: the majority value is the one
      // shared by two of the first three positions
      Elem const major = (xs[0] == xs[1] || xs[0] == xs[2]) ? xs[0] : xs[1];
      std::size_t dissidents = 0;
      Elem        other      = major;
      for (Elem x : xs) {
        if (x != major) {
          ++dissidents;
          other = x;
        }
      }
      return dissidents == 1 ? circ(major, other) : zero;
    });
    FiniteAlgebra out(alg.name() + "+3", n + 3, {{std::string(symbol), std::move(v)}});
    if (!classify_operation(out, symbol).wnu) {
      throw TheoremFalsified("simple extension of '" + alg.name() + "' is not a wnu");
    }
    if (congruence_lattice(out, {n + 3}).elements.size() != 2) {
      throw TheoremFalsified("simple extension of '" + alg.name() + "' is not simple");
    }
    return out;
  }

  Partition block_partition(std::vector<FiniteAlgebra> const& blocks) {
    std::vector<std::size_t> labels;
    for (std::size_t c = 0; c < blocks.size(); ++c) {
      labels.insert(labels.end(), blocks[c].size(), c);
    }
    return Partition(labels);
  }

  FiniteAlgebra glue_smb(FiniteAlgebra const&              semilattice,
                         std::vector<FiniteAlgebra> const& blocks,
                         std::vector<Elem> const&          reps,
                         GlueOptions const&                options) {
    if (!semilattice.has(kWedge) || semilattice.op(kWedge).arity() != 2
        || !is_semilattice(semilattice.op(kWedge))) {
      throw InvalidAlgebra("'" + semilattice.name() + "' is not a semilattice");
    }
    OperationTable const& meet = semilattice.op(kWedge);
    std::size_t const     m    = semilattice.size();
    if (blocks.size() != m || reps.size() != m) {
      throw InvalidAlgebra("need one block and one representative per semilattice element");
    }
    std::vector<Elem> offset(m + 1, 0);
    for (std::size_t c = 0; c < m; ++c) {
      auto const flags = classify_operation(blocks[c], kMalcev);
      if (!blocks[c].has(kMalcev) || blocks[c].op(kMalcev).arity() != 3 || !flags.malcev) {
        throw InvalidAlgebra("block " + std::to_string(c) + " has no Mal'cev operation 'd'");
      }
      offset[c + 1] = offset[c] + static_cast<Elem>(blocks[c].size());
    }
    std::size_t const n = offset[m];
    std::vector<Elem> cls(n);
    for (std::size_t c = 0; c < m; ++c) {
      for (Elem x = offset[c]; x < offset[c + 1]; ++x) {
        cls[x] = static_cast<Elem>(c);
      }
      if (reps[c] < offset[c] || reps[c] >= offset[c + 1]) {
        throw InvalidAlgebra("representative " + std::to_string(reps[c])
                             + " is not in block " + std::to_string(c));
      }
    }
    auto w = OperationTable::tabulate(2, n, [&](std::span<Elem const> v) {
      Elem const ca = cls[v[0]];
      Elem const cb = cls[v[1]];
      Elem const cm = meet({ca, cb});
      if (ca == cb || (options.absorb_below && cm == cb)) {
        return v[1];
      }
      return reps[cm];
    });
    auto d = OperationTable::tabulate(3, n, [&](std::span<Elem const> v) {
      Elem const c0 = cls[v[0]];
      if (c0 == cls[v[1]] && c0 == cls[v[2]]) {
        Elem const o = offset[c0];
        return o + blocks[c0].op(kMalcev)({v[0] - o, v[1] - o, v[2] - o});
      }
      return reps[meet({meet({c0, cls[v[1]]}), cls[v[2]]})];
    });
    std::string name = "glue(" + semilattice.name();
    for (auto const& b : blocks) {
      name += "," + b.name();
    }
    FiniteAlgebra out(name + ")", n, {{kW, std::move(w)}, {kD, std::move(d)}});
    auto const report = check_smb_over(out, block_partition(blocks));
    if (!report.holds) {
      throw TheoremFalsified("glued algebra is not SMB over its blocks ("
                             + report.violations.front().rule + ")");
    }
    return out;
  }

  FiniteAlgebra random_algebra(std::size_t n, Signature const& signature, std::uint64_t seed) {
    if (n == 0) {
      throw InvalidAlgebra("universe must be non-empty");
    }
    std::mt19937_64           rng(seed);
    FiniteAlgebra::Operations ops;
    for (auto const& [sym, arity] : signature) {
      std::vector<Elem> entries(checked_power(n, arity));
      for (auto& e : entries) {
        e = random_below(rng, n);
      }
      ops.emplace(sym, OperationTable(arity, n, std::move(entries)));
    }
    return FiniteAlgebra("random-" + std::to_string(n) + "-" + std::to_string(seed), n, std::move(ops));
  }

  AlgebraEnumerator::AlgebraEnumerator(std::size_t      n,
                                       Signature const& signature,
                                       std::uint64_t    max_count)
      : _n(n) {
    if (n == 0) {
      throw InvalidAlgebra("universe must be non-empty");
    }
    for (auto const& [sym, arity] : signature) {
      _ops.emplace_back(sym, arity);
      std::size_t const len = checked_power(n, arity);
      _table_sizes.push_back(len);
      for (std::size_t i = 0; i < len; ++i) {
        if (_count > max_count / n) {
          throw CapExceeded("enumerating every algebra of size " + std::to_string(n)
                            + " with this signature is infeasible");
        }
        _count *= n;
      }
    }
  }

  FiniteAlgebra AlgebraEnumerator::operator[](std::uint64_t i) const {
    if (i >= _count) {
      throw InvalidAlgebra("enumeration index out of range");
    }
    FiniteAlgebra::Operations ops;
    std::vector<std::vector<Elem>> tables(_ops.size());
    std::uint64_t code = i;
    for (std::size_t o = _ops.size(); o-- > 0;) {
      tables[o].resize(_table_sizes[o]);
      for (std::size_t e = _table_sizes[o]; e-- > 0;) {
        tables[o][e] = static_cast<Elem>(code % _n);
        code /= _n;
      }
    }
    for (std::size_t o = 0; o < _ops.size(); ++o) {
      ops.emplace(_ops[o].first, OperationTable(_ops[o].second, _n, std::move(tables[o])));
    }
    return FiniteAlgebra("enum-" + std::to_string(_n) + "-" + std::to_string(i), _n, std::move(ops));
  }

  AlgebraEnumerator exhaustive_enumerate(std::size_t n, Signature const& signature) {
    return AlgebraEnumerator(n, signature);
  }

  namespace {
    std::vector<FiniteAlgebra> random_semilattices(std::mt19937_64& rng,
                                                   std::size_t      min_size,
                                                   std::size_t      max_size,
                                                   std::size_t      count) {
      std::vector<FiniteAlgebra> out;
      for (std::size_t i = 0; out.size() < count && i < 4 * count; ++i) {
        std::size_t const m = min_size + random_below(rng, max_size - min_size + 1);
        auto meet = i % 2 == 0 ? random_tree_meet(m, rng) : random_family_meet(m, rng);
        if (meet.size() < min_size || meet.size() > max_size) {
          continue;
        }
        out.push_back(semilattice_algebra("SL" + std::to_string(out.size()), std::move(meet)));
      }
      return out;
    }

    // Random glued algebra with Z_m blocks, total size within bounds.
    FiniteAlgebra random_glued(std::mt19937_64& rng, std::size_t max_size, bool absorb_below,
                               std::size_t index) {
      while (true) {
        std::size_t const classes = 1 + random_below(rng, std::min<std::size_t>(3, max_size));
        auto const sls = random_semilattices(rng, classes, classes, 1);
        if (sls.empty()) {
          continue;
        }
        std::vector<FiniteAlgebra> blocks;
        std::size_t                total = 0;
        for (std::size_t c = 0; c < classes; ++c) {
          std::size_t const room = max_size - total - (classes - c - 1);
          std::size_t const sz   = 1 + random_below(rng, std::min<std::size_t>(3, room));
          blocks.push_back(affine_block(sz));
          total += sz;
        }
        std::vector<Elem> reps;
        Elem              off = 0;
        for (auto const& b : blocks) {
          reps.push_back(off + random_below(rng, b.size()));
          off += static_cast<Elem>(b.size());
        }
        return glue_smb(sls[0], blocks, reps, GlueOptions{absorb_below})
            .renamed("G" + std::to_string(index) + (absorb_below ? "a" : "n"));
      }
    }
  }  // namespace

  std::vector<FiniteAlgebra> nonregular_glued(std::uint64_t seed, std::size_t max_size, std::size_t count) {
    std::mt19937_64            rng(seed);
    std::vector<FiniteAlgebra> out;
    for (std::size_t i = 0; out.size() < count && i < 200 * count; ++i) {
      auto g = random_glued(rng, std::max<std::size_t>(max_size, 2), i % 3 != 0, i);
      if (!check_regular_base(g).holds()) {
        out.push_back(std::move(g));
      }
    }
    return out;
  }

  std::vector<FiniteAlgebra> regular_corpus(std::uint64_t seed, std::size_t max_size) {
    CorpusSpec spec;
    spec.seed     = seed;
    spec.max_size = max_size;
    spec.families = {"builtin", "semilattice", "affine", "regular"};
    std::vector<FiniteAlgebra> out;
    for (auto& alg : generate_corpus(spec)) {
      if (check_regular_base(alg).holds()) {
        out.push_back(std::move(alg));
      }
    }
    return out;
  }

  std::vector<FiniteAlgebra> generate_corpus(CorpusSpec const& spec) {
    if (spec.min_size == 0 || spec.min_size > spec.max_size) {
      throw InvalidAlgebra("corpus size bounds must satisfy 1 <= min <= max");
    }
    auto has = [&](std::string_view f) {
      return std::find(spec.families.begin(), spec.families.end(), f) != spec.families.end();
    };
    auto fits = [&](FiniteAlgebra const& a) {
      return a.size() >= spec.min_size && a.size() <= spec.max_size;
    };
    std::mt19937_64            rng(spec.seed);
    std::vector<FiniteAlgebra> out;
    std::set<std::string>      names;
    auto add = [&](FiniteAlgebra a) {
      if (!fits(a)) {
        return;
      }
      std::string name = a.name();
      for (std::size_t k = 2; names.count(name) != 0; ++k) {
        name = a.name() + "#" + std::to_string(k);
      }
      names.insert(name);
      out.push_back(a.renamed(name));
    };
    if (has("builtin")) {
      add(trivial_algebra());
      add(example_b2());
      add(example_s2());
      add(example_e3());
      add(example_n4());
    }
    if (has("semilattice")) {
      for (std::size_t m = 2; m <= std::min<std::size_t>(spec.max_size, 5); ++m) {
        add(chain_semilattice(m));
      }
      for (auto& s : random_semilattices(rng, std::max<std::size_t>(spec.min_size, 2),
                                         std::max<std::size_t>(spec.max_size, 2), spec.per_family / 2)) {
        add(std::move(s));
      }
    }
    if (has("affine")) {
      for (std::size_t m = 2; m <= std::min<std::size_t>(spec.max_size, 5); ++m) {
        add(affine_block(m));
      }
    }
    if (has("glued") && spec.max_size >= 2) {
      for (std::size_t i = 0; i < spec.per_family; ++i) {
        add(random_glued(rng, spec.max_size, i % 2 == 0, i));
      }
    }
    if (has("regular") && spec.max_size >= 2) {
      for (std::size_t i = 0; i < spec.per_family; ++i) {
        auto const g = random_glued(rng, spec.max_size, i % 2 == 0, 100 + i);
        add(regularize(g).renamed("R" + std::to_string(i)));
      }
    }
    if (has("random")) {
      Signature const sig{{kW, 2}, {kD, 3}};
      for (std::size_t i = 0; i < spec.per_family; ++i) {
        std::size_t const hi = std::max(spec.min_size, std::min<std::size_t>(spec.max_size, 4));
        std::size_t const n  = spec.min_size + random_below(rng, hi - spec.min_size + 1);
        add(random_algebra(n, sig, rng()));
      }
    }
    return out;
  }

  std::vector<std::vector<Elem>> subuniverses(FiniteAlgebra const& alg, std::size_t max_universe) {
    std::size_t const n = alg.size();
    if (n > max_universe) {
      throw CapExceeded("subuniverse enumeration of an algebra of size " + std::to_string(n)
                        + " exceeds the cap of " + std::to_string(max_universe));
    }
    std::set<std::vector<Elem>> found;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
      std::vector<std::vector<Elem>> gens;
      for (Elem x = 0; x < n; ++x) {
        if (mask >> x & 1) {
          gens.push_back({x});
        }
      }
      auto elems = generate_subpower(alg, 1, gens).elements();
      std::vector<Elem> sub;
      for (auto const& e : elems) {
        sub.push_back(e[0]);
      }
      std::sort(sub.begin(), sub.end());
      found.insert(std::move(sub));
    }
    return {found.begin(), found.end()};
  }

  FiniteAlgebra subalgebra(FiniteAlgebra const& alg, std::vector<Elem> const& elems_in) {
    std::vector<Elem> elems(elems_in);
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (elems.empty()) {
      throw InvalidAlgebra("a subalgebra needs at least one element");
    }
    std::vector<std::size_t> pos(alg.size(), alg.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (elems[i] >= alg.size()) {
        throw InvalidAlgebra("element " + std::to_string(elems[i]) + " outside the universe");
      }
      pos[elems[i]] = i;
    }
    FiniteAlgebra::Operations ops;
    for (auto const& [sym, f] : alg.operations()) {
      std::vector<Elem> args(f.arity());
      ops.emplace(sym, OperationTable::tabulate(f.arity(), elems.size(), [&](std::span<Elem const> v) {
                    for (std::size_t i = 0; i < v.size(); ++i) {
                      args[i] = elems[v[i]];
                    }
                    Elem const r = f(args);
                    if (pos[r] == alg.size()) {
                      throw InvalidAlgebra("subset is not closed under '" + sym + "'");
                    }
                    return static_cast<Elem>(pos[r]);
                  }));
    }
    std::string name = alg.name() + "[";
    for (std::size_t i = 0; i < elems.size(); ++i) {
      name += (i ? " " : "") + std::to_string(elems[i]);
    }
    return FiniteAlgebra(name + "]", elems.size(), std::move(ops));
  }

  FiniteAlgebra product(FiniteAlgebra const& a, FiniteAlgebra const& b, std::size_t max_size) {
    if (a.signature() != b.signature()) {
      throw InvalidAlgebra("product of algebras with different signatures");
    }
    std::size_t const nb = b.size();
    std::size_t const n  = a.size() * nb;
    if (n > max_size) {
      throw CapExceeded("product of size " + std::to_string(n) + " exceeds the cap of "
                        + std::to_string(max_size));
    }
    FiniteAlgebra::Operations ops;
    for (auto const& [sym, fa] : a.operations()) {
      OperationTable const& fb = b.op(sym);
      std::vector<Elem>     xa(fa.arity());
      std::vector<Elem>     xb(fa.arity());
      ops.emplace(sym, OperationTable::tabulate(fa.arity(), n, [&](std::span<Elem const> v) {
                    for (std::size_t i = 0; i < v.size(); ++i) {
                      xa[i] = static_cast<Elem>(v[i] / nb);
                      xb[i] = static_cast<Elem>(v[i] % nb);
                    }
                    return static_cast<Elem>(fa(xa) * nb + fb(xb));
                  }));
    }
    return FiniteAlgebra(a.name() + "x" + b.name(), n, std::move(ops));
  }

}  // namespace smbalg
