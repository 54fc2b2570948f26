#include "smbalg/subpower.hpp"

#include <limits>  // for numeric_limits

#include "smbalg/errors.hpp"

namespace smbalg {

  namespace {
    constexpr std::size_t   kNpos       = std::numeric_limits<std::size_t>::max();
    constexpr std::uint64_t kDenseLimit = std::uint64_t(1) << 22;

    // n^k, or nullopt if it exceeds 2^62
    std::optional<std::uint64_t> space_size(std::size_t n, std::size_t k) {
      std::uint64_t       total = 1;
      std::uint64_t const limit = std::uint64_t(1) << 62;
      for (std::size_t i = 0; i < k; ++i) {
        if (n != 0 && total > limit / n) {
          return std::nullopt;
        }
        total *= n;
      }
      return total;
    }
  }  // namespace

  std::uint64_t GeneratedSet::encode(std::span<Elem const> tuple) const {
    std::uint64_t code = 0;
    for (Elem x : tuple) {
      code = code * _n + x;
    }
    return code;
  }

  std::vector<Elem> GeneratedSet::element(std::size_t i) const {
    std::vector<Elem> out(_k);
    std::uint64_t     code = _codes[i];
    for (std::size_t j = _k; j-- > 0;) {
      out[j] = static_cast<Elem>(code % _n);
      code /= _n;
    }
    return out;
  }

  std::vector<std::vector<Elem>> GeneratedSet::elements() const {
    std::vector<std::vector<Elem>> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
      out.push_back(element(i));
    }
    return out;
  }

  std::string const& GeneratedSet::symbol(std::size_t i) const {
    static std::string const none;
    return i < _num_generators ? none : _symbols[_op[i - _num_generators]];
  }

  std::span<std::size_t const> GeneratedSet::parents(std::size_t i) const {
    if (i < _num_generators) {
      return {};
    }
    std::size_t const j = i - _num_generators;
    return std::span<std::size_t const>(_parents).subspan(_parent_begin[j],
                                                          _parent_begin[j + 1] - _parent_begin[j]);
  }

  std::optional<std::size_t> GeneratedSet::lookup(std::uint64_t code) const {
    if (_dense) {
      std::uint32_t const v = _dense_index[code];
      return v == 0 ? std::nullopt : std::optional<std::size_t>(v - 1);
    }
    auto it = _sparse_index.find(code);
    return it == _sparse_index.end() ? std::nullopt : std::optional<std::size_t>(it->second);
  }

  std::size_t GeneratedSet::insert(std::uint64_t code) {
    if (lookup(code)) {
      return kNpos;
    }
    std::size_t const i = _codes.size();
    _codes.push_back(code);
    if (_dense) {
      _dense_index[code] = static_cast<std::uint32_t>(i + 1);
    } else {
      _sparse_index.emplace(code, i);
    }
    return i;
  }

  std::optional<std::size_t> GeneratedSet::find(std::span<Elem const> tuple) const {
    if (tuple.size() != _k) {
      return std::nullopt;
    }
    for (Elem x : tuple) {
      if (x >= _n) {
        return std::nullopt;
      }
    }
    return lookup(encode(tuple));
  }

  Term GeneratedSet::witness(std::size_t i, std::span<Term const> generator_terms) const {
    std::vector<std::optional<Term>> memo(size());
    // iterative postorder so deep derivations cannot overflow the stack
    std::vector<std::pair<std::size_t, bool>> stack{{i, false}};
    while (!stack.empty()) {
      auto [j, expanded] = stack.back();
      stack.pop_back();
      if (memo[j]) {
        continue;
      }
      if (is_generator(j)) {
        std::size_t const origin = _generator_origin[j];
        if (origin >= generator_terms.size()) {
          throw EvalError("no term supplied for generator " + std::to_string(origin));
        }
        memo[j] = generator_terms[origin];
        continue;
      }
      auto const ps = parents(j);
      if (!expanded) {
        stack.emplace_back(j, true);
        for (std::size_t p : ps) {
          if (!memo[p]) {
            stack.emplace_back(p, false);
          }
        }
        continue;
      }
      std::vector<Term> children;
      children.reserve(ps.size());
      for (std::size_t p : ps) {
        children.push_back(*memo[p]);
      }
      memo[j] = Term::apply(symbol(j), std::move(children));
    }
    return *memo[i];
  }

  GeneratedSet generate_subpower(FiniteAlgebra const&                  alg,
                                 std::size_t                           k,
                                 std::vector<std::vector<Elem>> const& generators,
                                 SubpowerOptions const&                options) {
    std::size_t const n = alg.size();
    if (k == 0) {
      throw InvalidAlgebra("subpower exponent must be at least 1");
    }
    auto const space = space_size(n, k);
    if (!space) {
      throw CapExceeded("A^" + std::to_string(k) + " is too large to index");
    }
    GeneratedSet gs;
    gs._k     = k;
    gs._n     = n;
    gs._dense = *space <= kDenseLimit;
    if (gs._dense) {
      gs._dense_index.assign(*space, 0);
    }
    for (std::size_t g = 0; g < generators.size(); ++g) {
      auto const& tuple = generators[g];
      if (tuple.size() != k) {
        throw InvalidAlgebra("generator " + std::to_string(g) + " has length "
                             + std::to_string(tuple.size()) + ", expected " + std::to_string(k));
      }
      for (Elem x : tuple) {
        if (x >= n) {
          throw InvalidAlgebra("generator " + std::to_string(g) + " has entry "
                               + std::to_string(x) + " outside the universe");
        }
      }
      if (gs.insert(gs.encode(tuple)) != kNpos) {
        gs._generator_origin.push_back(g);
      }
    }
    gs._num_generators = gs._codes.size();
    gs._parent_begin.push_back(0);

    struct OpInfo {
      OperationTable const* table;
      std::uint32_t         id;
    };
    std::vector<OpInfo> ops;
    for (auto const& [sym, table] : alg.operations()) {
      ops.push_back({&table, static_cast<std::uint32_t>(gs._symbols.size())});
      gs._symbols.push_back(sym);
    }

    // Expanded coordinates of every tuple, for fast coordinatewise evaluation.
    std::vector<Elem> coords;
    auto              sync_coords = [&] {
      for (std::size_t i = coords.size() / k; i < gs.size(); ++i) {
        auto const e = gs.element(i);
        coords.insert(coords.end(), e.begin(), e.end());
      }
    };

    std::size_t              old_end = 0;
    std::vector<std::size_t> idx;
    std::vector<Elem>        result(k);
    while (old_end < gs.size()) {
      std::size_t const frontier_end = gs.size();
      sync_coords();
      for (auto const& info : ops) {
        OperationTable const& f = *info.table;
        std::size_t const     r = f.arity();
        // Argument tuples with at least one new element: positions before
        // `first` are old, position `first` is new, later positions are any.
        for (std::size_t first = 0; first < r; ++first) {
          if (old_end == 0 && first > 0) {
            break;
          }
          idx.assign(r, 0);
          idx[first] = old_end;
          auto lower = [&](std::size_t pos) { return pos == first ? old_end : 0; };
          auto upper = [&](std::size_t pos) { return pos < first ? old_end : frontier_end; };
          bool done  = false;
          for (std::size_t pos = 0; pos < r; ++pos) {
            if (lower(pos) >= upper(pos)) {
              done = true;
            }
          }
          while (!done) {
            for (std::size_t c = 0; c < k; ++c) {
              std::size_t fi = 0;
              for (std::size_t pos = 0; pos < r; ++pos) {
                fi = fi * n + coords[idx[pos] * k + c];
              }
              result[c] = f.at_index(fi);
            }
            std::size_t const added = gs.insert(gs.encode(result));
            if (added != kNpos) {
              if (gs.size() > options.max_elements) {
                throw CapExceeded("generated subpower exceeds "
                                  + std::to_string(options.max_elements) + " tuples");
              }
              gs._op.push_back(info.id);
              gs._parents.insert(gs._parents.end(), idx.begin(), idx.end());
              gs._parent_begin.push_back(gs._parents.size());
            }
            // odometer, last position fastest
            std::size_t pos = r;
            while (pos-- > 0) {
              if (++idx[pos] < upper(pos)) {
                break;
              }
              idx[pos] = lower(pos);
              if (pos == 0) {
                done = true;
              }
            }
          }
        }
      }
      old_end = frontier_end;
    }
    return gs;
  }

  std::vector<Elem> replay(FiniteAlgebra const& alg, GeneratedSet const& gs, std::size_t i) {
    std::vector<std::optional<std::vector<Elem>>> memo(gs.size());
    std::vector<std::pair<std::size_t, bool>>     stack{{i, false}};
    std::size_t const                             k = gs.power();
    while (!stack.empty()) {
      auto [j, expanded] = stack.back();
      stack.pop_back();
      if (memo[j]) {
        continue;
      }
      if (gs.is_generator(j)) {
        memo[j] = gs.element(j);
        continue;
      }
      auto const ps = gs.parents(j);
      if (!expanded) {
        stack.emplace_back(j, true);
        for (std::size_t p : ps) {
          stack.emplace_back(p, false);
        }
        continue;
      }
      OperationTable const& f = alg.op(gs.symbol(j));
      std::vector<Elem>     out(k);
      std::vector<Elem>     args(ps.size());
      for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t a = 0; a < ps.size(); ++a) {
          args[a] = (*memo[ps[a]])[c];
        }
        out[c] = f(args);
      }
      memo[j] = std::move(out);
    }
    return *memo[i];
  }

}  // namespace smbalg
