#include "smbalg/analyzer.hpp"

#include <algorithm>  // for min

#include "smbalg/errors.hpp"
#include "smbalg/relation.hpp"

namespace smbalg {

  ClassOrder::ClassOrder(Partition classes, std::vector<std::vector<bool>> leq)
      : _classes(std::move(classes)), _leq(std::move(leq)) {
    if (_leq.size() != _classes.num_classes()) {
      throw InvalidAlgebra("class order has the wrong number of rows");
    }
    for (auto const& row : _leq) {
      if (row.size() != _leq.size()) {
        throw InvalidAlgebra("class order matrix is not square");
      }
    }
  }

  bool ClassOrder::is_partial_order() const {
    std::size_t const m = num_classes();
    for (std::size_t i = 0; i < m; ++i) {
      if (!leq(i, i)) {
        return false;
      }
      for (std::size_t j = 0; j < m; ++j) {
        if (i != j && leq(i, j) && leq(j, i)) {
          return false;
        }
        for (std::size_t k = 0; k < m; ++k) {
          if (leq(i, j) && leq(j, k) && !leq(i, k)) {
            return false;
          }
        }
      }
    }
    return true;
  }

  std::optional<std::size_t> ClassOrder::least() const {
    for (std::size_t i = 0; i < num_classes(); ++i) {
      bool below_all = true;
      for (std::size_t j = 0; j < num_classes() && below_all; ++j) {
        below_all = leq(i, j);
      }
      if (below_all) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::optional<std::size_t> ClassOrder::greatest() const {
    for (std::size_t i = 0; i < num_classes(); ++i) {
      bool above_all = true;
      for (std::size_t j = 0; j < num_classes() && above_all; ++j) {
        above_all = leq(j, i);
      }
      if (above_all) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::optional<std::size_t> ClassOrder::glb(std::size_t i, std::size_t j) const {
    for (std::size_t k = 0; k < num_classes(); ++k) {
      if (!leq(k, i) || !leq(k, j)) {
        continue;
      }
      bool greatest = true;
      for (std::size_t m = 0; m < num_classes() && greatest; ++m) {
        if (leq(m, i) && leq(m, j)) {
          greatest = leq(m, k);
        }
      }
      if (greatest) {
        return k;
      }
    }
    return std::nullopt;
  }

  bool ClassOrder::is_meet_semilattice() const {
    for (std::size_t i = 0; i < num_classes(); ++i) {
      for (std::size_t j = 0; j < num_classes(); ++j) {
        if (!glb(i, j)) {
          return false;
        }
      }
    }
    return true;
  }

  void require_smb_signature(FiniteAlgebra const& alg) {
    if (!alg.has(kWedge) || alg.op(kWedge).arity() != 2) {
      throw InvalidAlgebra("algebra '" + alg.name() + "' has no binary operation '"
                           + std::string(kWedge) + "'");
    }
    if (!alg.has(kMalcev) || alg.op(kMalcev).arity() != 3) {
      throw InvalidAlgebra("algebra '" + alg.name() + "' has no ternary operation '"
                           + std::string(kMalcev) + "'");
    }
  }

  namespace {
    // [x] <= [y] iff x wedge y ~ x; only meaningful when the quotient is a
    // semilattice.
    ClassOrder order_from_wedge(FiniteAlgebra const& alg, Partition const& sim) {
      OperationTable const& w    = alg.op(kWedge);
      auto const            reps = sim.representatives();
      std::size_t const     m    = reps.size();
      std::vector<std::vector<bool>> leq(m, std::vector<bool>(m, false));
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          leq[i][j] = sim.class_of(w({reps[i], reps[j]})) == i;
        }
      }
      return ClassOrder(sim, std::move(leq));
    }
  }  // namespace

  namespace {
    SmbReport check_over(FiniteAlgebra const& alg, Partition const& sim, bool with_malcev) {
      if (sim.size() != alg.size()) {
        throw InvalidAlgebra("partition has size " + std::to_string(sim.size())
                             + " but the algebra has size " + std::to_string(alg.size()));
      }
      OperationTable const& w = alg.op(kWedge);
      Elem const            n = static_cast<Elem>(alg.size());
      SmbReport             report;
      report.sim = sim;

      if (auto v = congruence_violation(alg, sim)) {
        std::vector<Elem> witness(v->lhs);
        witness.insert(witness.end(), v->rhs.begin(), v->rhs.end());
        report.violations.push_back({"Congruence", std::move(witness)});
      }
      auto first_failure = [&](std::string rule, std::size_t arity, auto&& fails) {
        std::vector<Elem> t(arity, 0);
        std::size_t       total = checked_power(n, arity);
        for (std::size_t i = 0; i < total; ++i) {
          if (fails(t)) {
            report.violations.push_back({std::move(rule), t});
            return;
          }
          for (std::size_t j = arity; j-- > 0;) {
            if (++t[j] < n) {
              break;
            }
            t[j] = 0;
          }
        }
      };
      auto rel = [&](Elem x, Elem y) { return sim.related(x, y); };
      first_failure("Idem-mod-sim", 1, [&](auto const& t) { return !rel(w({t[0], t[0]}), t[0]); });
      first_failure("Comm-mod-sim", 2, [&](auto const& t) {
        return !rel(w({t[0], t[1]}), w({t[1], t[0]}));
      });
      first_failure("Assoc-mod-sim", 3, [&](auto const& t) {
        return !rel(w({w({t[0], t[1]}), t[2]}), w({t[0], w({t[1], t[2]})}));
      });
      first_failure("Proj2-block", 2, [&](auto const& t) {
        return rel(t[0], t[1]) && w({t[0], t[1]}) != t[1];
      });
      if (with_malcev) {
        OperationTable const& d = alg.op(kMalcev);
        first_failure("Malcev-block", 2, [&](auto const& t) {
          return rel(t[0], t[1])
                 && (d({t[0], t[1], t[1]}) != t[0] || d({t[1], t[1], t[0]}) != t[0]);
        });
      }

      report.holds = report.violations.empty();
      if (report.holds) {
        report.class_order = order_from_wedge(alg, sim);
      }
      return report;
    }
  }  // namespace

  SmbReport check_smb_over(FiniteAlgebra const& alg, Partition const& sim) {
    require_smb_signature(alg);
    return check_over(alg, sim, true);
  }

  SmbReport check_semilattice_over(FiniteAlgebra const& alg, Partition const& sim) {
    if (!alg.has(kWedge) || alg.op(kWedge).arity() != 2) {
      throw InvalidAlgebra("algebra '" + alg.name() + "' has no binary operation '"
                           + std::string(kWedge) + "'");
    }
    return check_over(alg, sim, false);
  }

  std::vector<Partition> find_smb_congruences(FiniteAlgebra const& alg, LatticeOptions const& options) {
    require_smb_signature(alg);
    std::vector<Partition> out;
    for (auto const& theta : congruence_lattice(alg, options).elements) {
      if (check_smb_over(alg, theta).holds) {
        out.push_back(theta);
      }
    }
    return out;
  }

  Partition wedge_relation(FiniteAlgebra const& alg) {
    require_smb_signature(alg);
    OperationTable const& w = alg.op(kWedge);
    BinaryRelation        r(alg.size());
    for (Elem a = 0; a < alg.size(); ++a) {
      for (Elem b = 0; b < alg.size(); ++b) {
        if (w({a, b}) == b && w({b, a}) == a) {
          r.insert(a, b);
        }
      }
    }
    return equivalence_closure(r);
  }

  SmbReport detect_smb(FiniteAlgebra const& alg) {
    return check_smb_over(alg, wedge_relation(alg));
  }

  RegularityReport check_regular(FiniteAlgebra const& alg, Partition const& sim) {
    auto const smb = check_smb_over(alg, sim);
    if (!smb.holds) {
      throw HypothesisError("algebra '" + alg.name() + "' is not SMB over " + to_string(sim)
                            + " (" + smb.violations.front().rule + ")");
    }
    OperationTable const& w     = alg.op(kWedge);
    OperationTable const& d     = alg.op(kMalcev);
    ClassOrder const&     order = *smb.class_order;
    Elem const            n     = static_cast<Elem>(alg.size());
    RegularityReport      report;
    auto fail = [&](std::size_t which, std::vector<Elem> t) {
      if (report.conditions[which].holds) {
        report.conditions[which] = Verdict{false, std::move(t)};
      }
    };
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        Elem const ab = w({a, b});
        if (order.leq_elems(b, a) && ab != b) {
          fail(1, {a, b});
        }
        if (w({ab, b}) != ab) {
          fail(3, {a, b});
        }
        for (Elem c = 0; c < n; ++c) {
          Elem const dabc = d({a, b, c});
          if (!sim.related(dabc, w({ab, c}))) {
            fail(0, {a, b, c});
          }
          Elem const rhs = d({w({w({b, c}), a}), w({w({a, c}), b}), w({ab, c})});
          if (dabc != rhs) {
            fail(2, {a, b, c});
          }
        }
      }
    }
    return report;
  }

  std::vector<BaseIdentity> const& regular_base_identities() {
    static std::vector<BaseIdentity> const base = [] {
      Term const x = Term::var(0);
      Term const y = Term::var(1);
      Term const z = Term::var(2);
      auto       m = [](Term const& a, Term const& b) { return app(std::string(kWedge), a, b); };
      auto       d = [](Term const& a, Term const& b, Term const& c) {
        return app(std::string(kMalcev), a, b, c);
      };
      Term const xy  = m(x, y);
      Term const yx  = m(y, x);
      Term const xyz = m(xy, z);
      Term const x_yz = m(x, m(y, z));
      Term const dxyz = d(x, y, z);
      return std::vector<BaseIdentity>{
          {"Idem1", {{m(x, x), x}}},
          {"Idem2", {{d(x, x, x), x}}},
          {"Comm", {{m(xy, yx), yx}}},
          {"Assoc1", {{m(x_yz, xyz), xyz}}},
          {"Assoc2", {{m(xyz, x_yz), x_yz}}},
          {"Mal", {{d(xy, yx, yx), xy}, {d(yx, yx, xy), xy}}},
          {"Regi1", {{m(xyz, dxyz), dxyz}}},
          {"Regi2", {{m(dxyz, xyz), xyz}}},
          {"Regii1", {{m(x, xy), xy}}},
          {"Regii2", {{m(x, yx), yx}}},
          {"Regiii", {{dxyz, d(m(m(y, z), x), m(m(x, z), y), xyz)}}},
          {"Regiv", {{m(xy, y), xy}}},
      };
    }();
    return base;
  }

  BaseReport check_regular_base(FiniteAlgebra const& alg) {
    require_smb_signature(alg);
    BaseReport report;
    bool       all = true;
    for (auto const& bi : regular_base_identities()) {
      Verdict v;
      for (auto const& part : bi.parts) {
        Verdict const pv = check_identity(alg, part);
        if (!pv.holds && (v.holds || *pv.counterexample < *v.counterexample)) {
          v = pv;
        }
      }
      all = all && v.holds;
      report.names.push_back(bi.name);
      report.verdicts.push_back(std::move(v));
    }
    if (!all) {
      return report;
    }
    Partition sim = wedge_relation(alg);
    auto const smb = check_smb_over(alg, sim);
    if (!smb.holds) {
      throw TheoremFalsified("algebra '" + alg.name()
                             + "' satisfies the regular base but is not SMB over "
                             + to_string(sim) + " (" + smb.violations.front().rule + ")");
    }
    if (!check_regular(alg, sim).regular()) {
      throw TheoremFalsified("algebra '" + alg.name()
                             + "' satisfies the regular base but is not regular over "
                             + to_string(sim));
    }
    report.recovered_sim = std::move(sim);
    return report;
  }

  Verdict taylor_check(FiniteAlgebra const& alg) {
    require_smb_signature(alg);
    std::vector<Term> xs;
    for (std::size_t i = 0; i < 6; ++i) {
      xs.push_back(Term::var(i));
    }
    auto m = [](Term const& a, Term const& b) { return app(std::string(kWedge), a, b); };
    Term const t = app(std::string(kMalcev), m(xs[0], xs[1]), m(xs[2], xs[3]), m(xs[4], xs[5]));
    Term const x  = Term::var(0);
    Term const y  = Term::var(1);
    auto       at = [&](std::vector<Term> const& args) { return t.substitute(args); };
    std::vector<Identity> const ids{
        {at({x, y, x, y, x, y}), m(x, y)},
        {at({y, x, y, x, x, y}), m(x, y)},
        {at({x, y, y, x, y, x}), m(x, y)},
    };
    Verdict result;
    for (auto const& id : ids) {
      Verdict const v = check_identity(alg, id);
      if (!v.holds && (result.holds || *v.counterexample < *result.counterexample)) {
        result = v;
      }
    }
    return result;
  }

  SmbContext::SmbContext(FiniteAlgebra const& alg) : _alg(&alg), _cache(alg) {
    require_smb_signature(alg);
    _wedge = &alg.op(kWedge);
    _d     = &alg.op(kMalcev);
  }

  SmbContext::~SmbContext() = default;

  BaseReport const& SmbContext::base() {
    if (!_base) {
      _base = check_regular_base(*_alg);
    }
    return *_base;
  }

  Partition const& SmbContext::sim() {
    require_regular();
    return *_base->recovered_sim;
  }

  void SmbContext::require_regular() {
    auto const& b = base();
    if (b.holds()) {
      return;
    }
    for (std::size_t i = 0; i < b.verdicts.size(); ++i) {
      if (!b.verdicts[i].holds) {
        throw HypothesisError("algebra '" + _alg->name() + "' is not a regular SMB algebra ("
                              + b.names[i] + " fails)");
      }
    }
  }

  Quotient const& SmbContext::quotient() {
    if (!_quotient) {
      _quotient = std::make_unique<Quotient>(quotient_algebra(*_alg, sim()));
    }
    return *_quotient;
  }

  CongruenceCache& SmbContext::quotient_congruences() {
    if (!_quotient_cache) {
      _quotient_cache = std::make_unique<CongruenceCache>(quotient().algebra);
    }
    return *_quotient_cache;
  }

  bool SmbContext::in_cg(Elem a, Elem b, Elem c, Elem d) {
    return _cache.principal(a, b).related(c, d);
  }

}  // namespace smbalg
