#include "smbalg/identity.hpp"

#include <algorithm>  // for max

#include "smbalg/errors.hpp"

namespace smbalg {

  namespace {
    // Odometer over {0..n-1}^m, last position fastest.
    bool advance(std::vector<Elem>& a, std::size_t n) {
      for (std::size_t j = a.size(); j-- > 0;) {
        if (++a[j] < n) {
          return true;
        }
        a[j] = 0;
      }
      return false;
    }

    struct CompiledIdentity {
      CompiledTerm lhs;
      CompiledTerm rhs;

      CompiledIdentity(FiniteAlgebra const& alg, Identity const& id)
          : lhs(alg, id.lhs), rhs(alg, id.rhs) {}

      std::size_t num_vars() const {
        return std::max(lhs.num_vars(), rhs.num_vars());
      }

      bool holds_at(std::span<Elem const> a, std::vector<Elem>& scratch) const {
        return lhs.eval(a, scratch) == rhs.eval(a, scratch);
      }
    };
  }  // namespace

  Verdict check_identity(FiniteAlgebra const& alg, Identity const& id) {
    return check_quasiidentity(alg, Quasiidentity{{}, id});
  }

  Verdict check_quasiidentity(FiniteAlgebra const& alg, Quasiidentity const& q) {
    std::vector<CompiledIdentity> premises;
    std::size_t                   m = 0;
    for (Identity const& p : q.premises) {
      premises.emplace_back(alg, p);
      m = std::max(m, premises.back().num_vars());
    }
    CompiledIdentity const conclusion(alg, q.conclusion);
    m = std::max(m, conclusion.num_vars());

    std::vector<Elem> a(m, 0);
    std::vector<Elem> scratch;
    do {
      bool satisfied = true;
      for (auto const& p : premises) {
        if (!p.holds_at(a, scratch)) {
          satisfied = false;
          break;
        }
      }
      if (satisfied && !conclusion.holds_at(a, scratch)) {
        return Verdict{false, a};
      }
    } while (advance(a, alg.size()));
    return Verdict{true, std::nullopt};
  }

  OperationFlags classify_operation(FiniteAlgebra const& alg, std::string_view symbol) {
    OperationTable const& f = alg.op(symbol);
    std::size_t const     k = f.arity();
    std::size_t const     n = alg.size();
    OperationFlags        flags;
    flags.idempotent = f.is_idempotent();

    std::vector<Elem> args(k);
    // w(x,...,x, y at position i, x,...,x)
    auto dissident = [&](Elem x, Elem y, std::size_t i) {
      std::fill(args.begin(), args.end(), x);
      args[i] = y;
      return f(args);
    };

    if (k >= 2 && flags.idempotent) {
      flags.wnu = true;
      for (Elem x = 0; x < n && flags.wnu; ++x) {
        for (Elem y = 0; y < n && flags.wnu; ++y) {
          Elem const first = dissident(x, y, k - 1);
          for (std::size_t i = 0; i + 1 < k; ++i) {
            if (dissident(x, y, i) != first) {
              flags.wnu = false;
              break;
            }
          }
        }
      }
    }
    if (flags.wnu) {
      flags.special_wnu = true;
      for (Elem x = 0; x < n && flags.special_wnu; ++x) {
        for (Elem y = 0; y < n; ++y) {
          Elem const xy = dissident(x, y, k - 1);
          if (dissident(x, xy, k - 1) != xy) {
            flags.special_wnu = false;
            break;
          }
        }
      }
    }
    if (k == 3) {
      flags.malcev = true;
      for (Elem x = 0; x < n && flags.malcev; ++x) {
        for (Elem y = 0; y < n; ++y) {
          if (f({x, y, y}) != x || f({y, y, x}) != x) {
            flags.malcev = false;
            break;
          }
        }
      }
    }
    if (k >= 2) {
      flags.second_projection = true;
      // the second argument of the tuple at index i is (i / n^(k-2)) mod n
      std::size_t stride = 1;
      for (std::size_t j = 2; j < k; ++j) {
        stride *= n;
      }
      for (std::size_t i = 0; i < f.entries().size(); ++i) {
        if (f.at_index(i) != (i / stride) % n) {
          flags.second_projection = false;
          break;
        }
      }
    }
    return flags;
  }

}  // namespace smbalg
