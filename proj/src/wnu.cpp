#include "smbalg/wnu.hpp"

#include "smbalg/congruence.hpp"
#include "smbalg/errors.hpp"
#include "smbalg/identity.hpp"

namespace smbalg {

  namespace {
    constexpr std::string_view kScratch = "w";

    bool is_wnu_table(OperationTable const& t) {
      FiniteAlgebra const tmp("scratch", t.size(), {{std::string(kScratch), t}});
      return classify_operation(tmp, kScratch).wnu;
    }

    // x o y = w(x, ..., x, y), no checks
    OperationTable raw_circ(OperationTable const& w) {
      std::size_t const k = w.arity();
      std::vector<Elem> args(k);
      return OperationTable::tabulate(2, w.size(), [&](std::span<Elem const> xy) {
        std::fill(args.begin(), args.end(), xy[0]);
        args[k - 1] = xy[1];
        return w(args);
      });
    }

    OperationTable special_of(OperationTable const& circ) {
      std::size_t const              n = circ.size();
      std::vector<std::vector<Elem>> rows(n);
      for (Elem x = 0; x < n; ++x) {
        auto const row = circ.entries().subspan(x * n, n);
        rows[x]        = idempotent_power(row);
      }
      auto out = OperationTable::tabulate(
          2, n, [&](std::span<Elem const> xy) { return rows[xy[0]][xy[1]]; });
      for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < n; ++y) {
          if (out({x, out({x, y})}) != out({x, y})) {
            throw TheoremFalsified("special circ fails x o (x o y) = x o y at ("
                                   + std::to_string(x) + "," + std::to_string(y) + ")");
          }
        }
      }
      return out;
    }

    std::string class_string(Partition const& p, std::size_t id) {
      std::string out = "{";
      bool        first = true;
      for (Elem x = 0; x < p.size(); ++x) {
        if (p.class_of(x) == id) {
          out += (first ? "" : " ") + std::to_string(x);
          first = false;
        }
      }
      return out + "}";
    }
  }  // namespace

  void require_wnu(FiniteAlgebra const& alg, std::string_view symbol) {
    if (!classify_operation(alg, symbol).wnu) {
      throw HypothesisError("operation '" + std::string(symbol) + "' of '" + alg.name()
                            + "' is not a weak near-unanimity operation");
    }
  }

  OperationTable circ_table(FiniteAlgebra const& alg, std::string_view symbol) {
    require_wnu(alg, symbol);
    return raw_circ(alg.op(symbol));
  }

  std::vector<Elem> idempotent_power(std::span<Elem const> f) {
    std::size_t const n = f.size();
    for (Elem x : f) {
      if (x >= n) {
        throw InvalidAlgebra("self-map has value " + std::to_string(x) + " outside {0.."
                             + std::to_string(n) + ")");
      }
    }
    // For each x: walk to its cycle, then take the least multiple of the
    // cycle length not below the tail length.
    std::vector<Elem>        out(n);
    std::vector<std::size_t> seen_at(n);
    std::vector<Elem>        orbit;
    for (Elem x = 0; x < n; ++x) {
      std::fill(seen_at.begin(), seen_at.end(), n + 1);
      orbit.clear();
      Elem y = x;
      while (seen_at[y] == n + 1) {
        seen_at[y] = orbit.size();
        orbit.push_back(y);
        y = f[y];
      }
      std::size_t const tail   = seen_at[y];
      std::size_t const period = orbit.size() - tail;
      std::size_t       m      = tail == 0 ? 0 : ((tail + period - 1) / period) * period;
      out[x]                   = orbit[tail + (m - tail) % period];
    }
    return out;
  }

  WnuIteration iterate_wnu(FiniteAlgebra const& alg, std::string_view symbol) {
    require_wnu(alg, symbol);
    OperationTable const& w = alg.op(symbol);
    std::size_t const     k = w.arity();
    std::size_t const     n = alg.size();
    WnuIteration          it;
    it.stages.push_back(w);
    for (std::size_t i = 1; i < n; ++i) {
      OperationTable const& wi   = it.stages.back();
      OperationTable const  circ = raw_circ(wi);
      std::vector<Elem>     args(k);
      auto next = OperationTable::tabulate(k, n, [&](std::span<Elem const> xs) {
        Elem const t = wi(xs);
        for (std::size_t j = 0; j < k; ++j) {
          args[j] = circ({t, xs[j]});
        }
        return wi(args);
      });
      if (next == wi) {
        it.fixpoint = true;
        break;
      }
      if (!is_wnu_table(next)) {
        throw TheoremFalsified("iteration " + std::to_string(i + 1) + " of '"
                               + std::string(symbol) + "' is not a wnu");
      }
      it.stages.push_back(std::move(next));
    }
    return it;
  }

  OperationTable special_circ(FiniteAlgebra const& alg, std::string_view symbol) {
    return special_of(circ_table(alg, symbol));
  }

  ClassOrderReport class_order_from_circ(OperationTable const& circ, Partition const& sim) {
    if (circ.arity() != 2 || circ.size() != sim.size()) {
      throw InvalidAlgebra("circ must be binary on the universe of the partition");
    }
    std::size_t const n    = sim.size();
    std::size_t const m    = sim.num_classes();
    auto const        reps = sim.representatives();
    ClassOrderReport  report;
    std::vector<std::vector<bool>> leq(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        leq[i][j] = sim.related(circ({reps[j], reps[i]}), reps[i]);
      }
    }
    for (Elem x = 0; x < n && !report.inconsistency; ++x) {
      for (Elem y = 0; y < n && !report.inconsistency; ++y) {
        std::size_t const i = sim.class_of(x);
        std::size_t const j = sim.class_of(y);
        if (sim.related(circ({y, x}), x) != leq[i][j]) {
          report.inconsistency = std::vector<Elem>{x, y, reps[i], reps[j]};
        }
      }
    }
    if (report.inconsistency) {
      return report;
    }
    ClassOrder order(sim, std::move(leq));
    report.partial_order = order.is_partial_order();
    report.least         = order.least();
    report.greatest      = order.greatest();
    report.glb_closed    = order.is_meet_semilattice();
    report.order         = std::move(order);
    return report;
  }

  SemilatticeTermResult semilattice_term(FiniteAlgebra const& alg,
                                         std::string_view     symbol,
                                         Partition const&     sim) {
    require_wnu(alg, symbol);
    if (auto v = congruence_violation(alg, sim)) {
      throw HypothesisError("hypotheses not established: partition is not a congruence ("
                            + to_string(*v) + ")");
    }
    if (!is_abelian(alg, sim)) {
      throw HypothesisError("hypotheses not established: " + to_string(sim)
                            + " is not Abelian");
    }
    if (!sim.is_full()) {
      auto const  lat = congruence_lattice(alg);
      auto const  i   = lat.index_of(sim);
      std::size_t top = lat.elements.size() - 1;
      bool        coatom = false;
      for (auto const& [lo, hi] : lat.covers) {
        coatom = coatom || (i && lo == *i && hi == top);
      }
      if (!coatom) {
        throw HypothesisError("hypotheses not established: " + to_string(sim)
                              + " is not a coatom of the congruence lattice");
      }
    }
    WnuIteration const   it = iterate_wnu(alg, symbol);
    OperationTable const cv = special_of(raw_circ(it.result()));
    auto const           order = class_order_from_circ(cv, sim);
    if (!order.order || !order.greatest) {
      throw HypothesisError("hypotheses not established: the circ order has no greatest class");
    }
    SemilatticeTermResult result;
    result.wedge = OperationTable::tabulate(
        2, alg.size(), [&](std::span<Elem const> xy) { return cv({cv({xy[1], xy[0]}), xy[1]}); });
    FiniteAlgebra const reduct(alg.name() + "-wedge", alg.size(),
                               {{std::string(kWedge), result.wedge}});
    result.report = check_semilattice_over(reduct, sim);
    if (!result.report.holds) {
      auto const& v = result.report.violations.front();
      throw TheoremFalsified("derived wedge of '" + alg.name() + "' fails " + v.rule);
    }
    return result;
  }

  PipelineResult run_pipeline(FiniteAlgebra const&            alg,
                              std::string_view                symbol,
                              std::optional<Partition> const& sim) {
    PipelineResult r;
    r.circ = circ_table(alg, symbol);
    r.diagnostics.push_back("circ: x o y = " + std::string(symbol) + "(x,...,x,y)");
    auto const it   = iterate_wnu(alg, symbol);
    r.iterated      = it.result();
    r.diagnostics.push_back("iterate: " + std::to_string(it.stages.size()) + " stage(s)"
                            + (it.fixpoint ? ", fixpoint reached" : ", stopped at |A|"));
    r.circ_iterated = raw_circ(r.iterated);
    r.circ_special  = special_of(r.circ_iterated);
    r.diagnostics.push_back("special: x o (x o y) = x o y holds");
    if (!sim) {
      return r;
    }
    auto const order = class_order_from_circ(r.circ_special, *sim);
    if (!order.order) {
      r.diagnostics.push_back("order: depends on representatives");
    } else {
      std::string line = "order: ";
      line += order.least ? "least class " + class_string(*sim, *order.least) : "no least class";
      line += order.greatest ? ", greatest class " + class_string(*sim, *order.greatest)
                             : ", no greatest class";
      line += order.glb_closed ? ", glb-closed" : ", not glb-closed";
      r.diagnostics.push_back(line);
    }
    try {
      r.wedge_candidate = semilattice_term(alg, symbol, *sim).wedge;
      r.diagnostics.push_back("wedge: semilattice modulo sim, second projection on classes");
    } catch (HypothesisError const& e) {
      r.diagnostics.push_back(std::string("wedge: ") + e.what());
    }
    return r;
  }

  FiniteAlgebra regularize(FiniteAlgebra const& alg, std::optional<Partition> const& sim_in) {
    require_smb_signature(alg);
    Partition const sim = sim_in ? *sim_in : wedge_relation(alg);
    auto const      smb = check_smb_over(alg, sim);
    if (!smb.holds) {
      throw HypothesisError("algebra '" + alg.name() + "' is not SMB over " + to_string(sim)
                            + " (" + smb.violations.front().rule + ")");
    }
    std::size_t const     n = alg.size();
    OperationTable const& w = alg.op(kWedge);
    OperationTable const& d = alg.op(kMalcev);

    auto derive_d = [n](OperationTable const& m, OperationTable const& dd) {
      return OperationTable::tabulate(3, n, [&](std::span<Elem const> v) {
        Elem const x = v[0], y = v[1], z = v[2];
        return dd({m({m({y, z}), x}), m({m({x, z}), y}), m({m({x, y}), z})});
      });
    };
    // first step: (i)-(iii)
    auto const w1 = OperationTable::tabulate(
        2, n, [&](std::span<Elem const> xy) { return w({w({xy[0], xy[1]}), xy[1]}); });
    auto const d1 = derive_d(w1, d);
    // second step: (ii) and (iv) via the idempotent power of t -> t ^1 y
    std::vector<std::vector<Elem>> columns(n);
    for (Elem y = 0; y < n; ++y) {
      std::vector<Elem> g(n);
      for (Elem t = 0; t < n; ++t) {
        g[t] = w1({t, y});
      }
      columns[y] = idempotent_power(g);
    }
    auto const w2 = OperationTable::tabulate(
        2, n, [&](std::span<Elem const> xy) { return columns[xy[1]][xy[0]]; });
    auto const d2 = derive_d(w2, d1);

    FiniteAlgebra out(alg.name() + "-reg", n,
                      {{std::string(kWedge), w2}, {std::string(kMalcev), d2}});
    auto const base = check_regular_base(out);
    if (!base.holds()) {
      throw TheoremFalsified("regularization of '" + alg.name()
                             + "' does not satisfy the regular base");
    }
    if (*base.recovered_sim != sim) {
      throw TheoremFalsified("regularization of '" + alg.name() + "' changed sim from "
                             + to_string(sim) + " to " + to_string(*base.recovered_sim));
    }
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        for (Elem c = 0; c < n; ++c) {
          if (sim.related(a, b) && sim.related(a, c) && d2({a, b, c}) != d({a, b, c})) {
            throw TheoremFalsified("regularization of '" + alg.name() + "' changed d at ("
                                   + std::to_string(a) + "," + std::to_string(b) + ","
                                   + std::to_string(c) + ")");
          }
        }
      }
    }
    return out;
  }

}  // namespace smbalg
