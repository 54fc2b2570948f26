#include "smbalg/chains.hpp"

#include <algorithm>  // for reverse
#include <deque>      // for deque
#include <limits>     // for numeric_limits
#include <set>        // for set

#include "smbalg/congruence.hpp"
#include "smbalg/errors.hpp"

namespace smbalg {

  namespace {
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    bool same_set(Elem x, Elem y, Elem u, Elem v) {
      return (x == u && y == v) || (x == v && y == u);
    }

    std::string quad(Elem a, Elem b, Elem c, Elem d) {
      return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ","
             + std::to_string(d) + ")";
    }

    void check_elems(FiniteAlgebra const& alg, std::initializer_list<Elem> xs) {
      for (Elem x : xs) {
        if (x >= alg.size()) {
          throw InvalidAlgebra("element " + std::to_string(x) + " outside universe of size "
                               + std::to_string(alg.size()));
        }
      }
    }

    // [x] <= [y] in the semilattice A/sim
    bool class_leq(SmbContext const& ctx, Partition const& sim, Elem x, Elem y) {
      return sim.related(ctx.wedge(x, y), x);
    }

    // {[a],[b]} meet {[c],[d]} in the quotient is trivial
    bool quotient_meet_trivial(SmbContext& ctx, Elem a, Elem b, Elem c, Elem d) {
      auto const& q   = ctx.quotient();
      auto&       qcg = ctx.quotient_congruences();
      Partition const lhs = qcg.principal(q.class_map[a], q.class_map[b]);
      Partition const rhs = qcg.principal(q.class_map[c], q.class_map[d]);
      return meet_partitions(lhs, rhs).is_discrete();
    }
  }  // namespace

  bool replays(FiniteAlgebra const& alg, PolynomialChain const& chain, Elem a, Elem b) {
    if (chain.elements.size() != chain.polynomials.size() + 1) {
      return false;
    }
    std::vector<Elem> at_a{a};
    std::vector<Elem> at_b{b};
    for (std::size_t i = 0; i < chain.polynomials.size(); ++i) {
      auto const& p = chain.polynomials[i];
      if (p.num_vars() > 1) {
        return false;
      }
      if (!same_set(eval_term(alg, p, at_a), eval_term(alg, p, at_b), chain.elements[i],
                    chain.elements[i + 1])) {
        return false;
      }
    }
    return true;
  }

  CgD3Report verify_cg_d3(SmbContext& ctx, Elem a, Elem b) {
    FiniteAlgebra const& alg = ctx.algebra();
    check_elems(alg, {a, b});
    ctx.require_regular();
    std::size_t const n = alg.size();

    CgD3Report report;
    report.cg               = BinaryRelation::from_partition(ctx.congruences().principal(a, b));
    GeneratedSet const dset = d_rel(alg, a, b);
    BinaryRelation const dr = to_relation(dset);
    report.d3               = compose_relations(compose_relations(dr, dr), dr);
    report.equal            = report.cg == report.d3;

    // generator order in d_rel: (a,b), (b,a), then (c,c)
    std::vector<Term> gen_terms{Term::var(0), Term::var(1)};
    for (Elem c = 0; c < n; ++c) {
      gen_terms.push_back(Term::constant(c));
    }
    Term const x  = Term::var(0);
    Term const ca = Term::constant(a);

    for (auto const& [c, d] : report.cg.pairs()) {
      PolynomialChain chain;
      chain.elements.push_back(c);
      if (c != d) {
        // shortest path from c to d along D
        std::vector<std::size_t> parent(n, kNone);
        std::deque<Elem>         queue{c};
        parent[c] = c;
        while (!queue.empty() && parent[d] == kNone) {
          Elem const u = queue.front();
          queue.pop_front();
          for (Elem v = 0; v < n; ++v) {
            if (parent[v] == kNone && dr.contains(u, v)) {
              parent[v] = u;
              queue.push_back(v);
            }
          }
        }
        if (parent[d] == kNone) {
          throw TheoremFalsified("pair (" + std::to_string(c) + "," + std::to_string(d)
                                 + ") of Cg is not reachable along D");
        }
        std::vector<Elem> path{d};
        while (path.back() != c) {
          path.push_back(static_cast<Elem>(parent[path.back()]));
        }
        std::reverse(path.begin(), path.end());
        for (std::size_t s = 0; s + 1 < path.size(); ++s) {
          Elem const u = path[s];
          Elem const v = path[s + 1];
          Term const q = dset.witness(*dset.find(std::vector<Elem>{u, v}), gen_terms);
          Elem const m = eval_term(alg, q, std::vector<Elem>{a, a});
          // q(a,x) links u and m; q(x,a) links m and v
          if (m != u) {
            chain.polynomials.push_back(q.substitute(std::vector<Term>{ca, x}));
            chain.elements.push_back(m);
          }
          if (m != v) {
            chain.polynomials.push_back(q.substitute(std::vector<Term>{x, ca}));
            chain.elements.push_back(v);
          }
        }
      }
      report.chains.emplace(std::make_pair(c, d), std::move(chain));
    }
    return report;
  }

  CgD3Report verify_cg_d3(FiniteAlgebra const& alg, Elem a, Elem b) {
    SmbContext ctx(alg);
    return verify_cg_d3(ctx, a, b);
  }

  JoinMembership join_membership_chain(SmbContext& ctx, Partition const& sim,
                                       Elem a, Elem b, Elem c, Elem d) {
    FiniteAlgebra const& alg = ctx.algebra();
    check_elems(alg, {a, b, c, d});
    if (auto v = congruence_violation(alg, sim)) {
      throw NotCongruence("sim is not a congruence: " + to_string(*v));
    }
    std::size_t const n      = alg.size();
    bool const        joined = join_partitions(ctx.congruences().principal(a, b), sim).related(c, d);

    // polynomial edges {p(a), p(b)}
    auto const& pol = ctx.congruences().unary_polynomials();
    std::vector<std::vector<std::pair<Elem, std::size_t>>> edges(n);
    for (std::size_t i = 0; i < pol.maps.size(); ++i) {
      Elem const u = pol.maps[i][a];
      Elem const v = pol.maps[i][b];
      if (u != v) {
        edges[u].emplace_back(v, i);
        edges[v].emplace_back(u, i);
      }
    }
    // BFS over the c_i; from c_i step to any d_i ~ c_i, then along an edge
    struct Back {
      Elem        prev_c;
      Elem        prev_d;
      std::size_t poly;
    };
    std::vector<std::optional<Back>> back(n);
    std::vector<bool>                seen(n, false);
    std::deque<Elem>                 queue{c};
    seen[c] = true;
    std::optional<Elem> last_c;
    while (!queue.empty() && !last_c) {
      Elem const ci = queue.front();
      queue.pop_front();
      if (sim.related(ci, d)) {
        last_c = ci;
        break;
      }
      for (Elem di = 0; di < n; ++di) {
        if (!sim.related(ci, di)) {
          continue;
        }
        for (auto const& [z, p] : edges[di]) {
          if (!seen[z]) {
            seen[z] = true;
            back[z] = Back{ci, di, p};
            queue.push_back(z);
          }
        }
      }
    }
    JoinMembership out;
    out.member = last_c.has_value();
    if (out.member != joined) {
      throw TheoremFalsified("chain search and partition join disagree on " + quad(a, b, c, d));
    }
    if (out.member) {
      JoinChain chain;
      Elem      ci = *last_c;
      chain.c.push_back(ci);
      chain.d.push_back(d);
      while (back[ci]) {
        Back const& bk = *back[ci];
        chain.polynomials.push_back(pol.witnesses[bk.poly]);
        chain.c.push_back(bk.prev_c);
        chain.d.push_back(bk.prev_d);
        ci = bk.prev_c;
      }
      std::reverse(chain.c.begin(), chain.c.end());
      std::reverse(chain.d.begin(), chain.d.end());
      std::reverse(chain.polynomials.begin(), chain.polynomials.end());
      out.chain = std::move(chain);
    }
    return out;
  }

  JoinMembership join_membership_chain(FiniteAlgebra const& alg, Partition const& sim,
                                       Elem a, Elem b, Elem c, Elem d) {
    SmbContext ctx(alg);
    return join_membership_chain(ctx, sim, a, b, c, d);
  }

  std::optional<BelowPair> cgvsim_below(SmbContext& ctx, Elem a, Elem b, Elem c, Elem d) {
    Partition const& sim = ctx.sim();
    auto const       jm  = join_membership_chain(ctx, sim, a, b, c, d);
    if (!jm.member) {
      return std::nullopt;
    }
    auto const&       cs = jm.chain->c;
    auto const&       ds = jm.chain->d;
    std::size_t const k  = cs.size() - 1;
    Elem              e  = cs[0];
    for (std::size_t l = 1; l <= k; ++l) {
      e = ctx.wedge(cs[l], e);
    }
    Elem f = ds[k];
    for (std::size_t l = k; l-- > 0;) {
      f = ctx.wedge(ds[l], f);
    }
    bool const ok = ctx.in_cg(a, b, c, e) && ctx.in_cg(a, b, d, f) && sim.related(e, f)
                    && class_leq(ctx, sim, e, ctx.wedge(c, d));
    if (!ok) {
      throw TheoremFalsified("wedge folds along a join chain fail for " + quad(a, b, c, d));
    }
    return BelowPair{e, f};
  }

  std::optional<BelowPair> cgvsim_below(FiniteAlgebra const& alg, Elem a, Elem b, Elem c, Elem d) {
    SmbContext ctx(alg);
    return cgvsim_below(ctx, a, b, c, d);
  }

  bool check_cgvsim(SmbContext& ctx, Elem a, Elem b, Elem c, Elem d) {
    check_elems(ctx.algebra(), {a, b, c, d});
    Partition const& sim   = ctx.sim();
    bool const       left  = join_partitions(ctx.congruences().principal(a, b), sim).related(c, d);
    bool const       right = ctx.in_cg(a, b, c, ctx.wedge(d, c)) && ctx.in_cg(a, b, d, ctx.wedge(c, d));
    if (left != right) {
      throw TheoremFalsified("join membership and wedge criterion disagree on " + quad(a, b, c, d));
    }
    return left;
  }

  bool check_cgvsim(FiniteAlgebra const& alg, Elem a, Elem b, Elem c, Elem d) {
    SmbContext ctx(alg);
    return check_cgvsim(ctx, a, b, c, d);
  }

  bool check_undersim(SmbContext& ctx, Elem a, Elem b, Elem c, Elem d) {
    check_elems(ctx.algebra(), {a, b, c, d});
    Partition const& sim  = ctx.sim();
    Partition const  cgab = ctx.congruences().principal(a, b);
    Partition const  cgcd = ctx.congruences().principal(c, d);
    bool const       left  = meet_partitions(cgab, cgcd).refines(sim);
    bool const       right = quotient_meet_trivial(ctx, a, b, c, d);
    if (left != right) {
      throw TheoremFalsified("meet below sim and quotient meet disagree on " + quad(a, b, c, d));
    }
    return left;
  }

  bool check_undersim(FiniteAlgebra const& alg, Elem a, Elem b, Elem c, Elem d) {
    SmbContext ctx(alg);
    return check_undersim(ctx, a, b, c, d);
  }

  bool commutator_below_sim(SmbContext& ctx, Elem a, Elem b, Elem c, Elem d) {
    check_elems(ctx.algebra(), {a, b, c, d});
    Partition const& sim  = ctx.sim();
    Partition const  cgab = ctx.congruences().principal(a, b);
    Partition const  cgcd = ctx.congruences().principal(c, d);
    bool const       left  = ctx.congruences().commutator(cgab, cgcd).refines(sim);
    bool const       right = quotient_meet_trivial(ctx, a, b, c, d);
    if (left != right) {
      throw TheoremFalsified("commutator below sim and quotient commutator disagree on "
                             + quad(a, b, c, d));
    }
    return left;
  }

  bool commutator_below_sim(FiniteAlgebra const& alg, Elem a, Elem b, Elem c, Elem d) {
    SmbContext ctx(alg);
    return commutator_below_sim(ctx, a, b, c, d);
  }

  FoldResult leminjection_fold(FiniteAlgebra const&     alg,
                               Partition const&         sim,
                               Partition const&         theta,
                               std::vector<Elem> const& chain) {
    if (chain.empty() || chain.size() % 2 != 0) {
      throw InvalidAlgebra("a chain c_0, d_0, ..., c_k, d_k has even positive length");
    }
    for (Elem x : chain) {
      check_elems(alg, {x});
    }
    auto const smb = check_smb_over(alg, sim);
    if (!smb.holds) {
      throw HypothesisError("algebra '" + alg.name() + "' is not SMB over " + to_string(sim));
    }
    if (theta.size() != alg.size() || !is_congruence(alg, theta)) {
      throw HypothesisError("theta is not a congruence of '" + alg.name() + "'");
    }
    std::size_t const k = chain.size() / 2 - 1;
    for (std::size_t i = 0; i <= k; ++i) {
      if (!sim.related(chain[2 * i], chain[2 * i + 1])) {
        throw InvalidAlgebra("c_" + std::to_string(i) + " and d_" + std::to_string(i)
                             + " are not sim-related");
      }
      if (i < k && !theta.related(chain[2 * i + 1], chain[2 * i + 2])) {
        throw InvalidAlgebra("d_" + std::to_string(i) + " and c_" + std::to_string(i + 1)
                             + " are not theta-related");
      }
    }
    OperationTable const& w = alg.op(kWedge);
    FoldResult            r;
    r.e = chain[0];
    for (std::size_t i = 1; i <= k; ++i) {
      r.e = w({r.e, chain[2 * i]});
    }
    auto theta_classes = [&](Elem x) {
      std::set<std::size_t> out;
      for (Elem y = 0; y < alg.size(); ++y) {
        if (sim.related(x, y)) {
          out.insert(theta.class_of(y));
        }
      }
      return out;
    };
    auto const target = theta_classes(r.e);
    auto       within = [&](std::set<std::size_t> const& s) {
      return std::includes(target.begin(), target.end(), s.begin(), s.end());
    };
    r.covers_first = within(theta_classes(chain.front()));
    r.covers_last  = within(theta_classes(chain.back()));
    Elem const m   = w({chain.front(), chain.back()});
    r.below_meet   = smb.class_order->leq_elems(r.e, m);
    return r;
  }

  std::optional<std::vector<Elem>> alternating_chain(Partition const& sim,
                                                     Partition const& theta,
                                                     Elem a, Elem b) {
    std::size_t const n = sim.size();
    if (theta.size() != n || a >= n || b >= n) {
      throw InvalidAlgebra("alternating chain over mismatched sizes");
    }
    std::vector<std::optional<std::pair<Elem, Elem>>> back(n);  // (prev c, prev d)
    std::vector<bool>                                  seen(n, false);
    std::deque<Elem>                                   queue{a};
    seen[a] = true;
    std::optional<Elem> last;
    while (!queue.empty()) {
      Elem const ci = queue.front();
      queue.pop_front();
      if (sim.related(ci, b)) {
        last = ci;
        break;
      }
      for (Elem di = 0; di < n; ++di) {
        if (!sim.related(ci, di)) {
          continue;
        }
        for (Elem z = 0; z < n; ++z) {
          if (!seen[z] && theta.related(di, z)) {
            seen[z] = true;
            back[z] = std::make_pair(ci, di);
            queue.push_back(z);
          }
        }
      }
    }
    if (!last) {
      return std::nullopt;
    }
    std::vector<Elem> rev{b, *last};
    Elem              ci = *last;
    while (back[ci]) {
      rev.push_back(back[ci]->second);
      rev.push_back(back[ci]->first);
      ci = back[ci]->first;
    }
    return std::vector<Elem>(rev.rbegin(), rev.rend());
  }

}  // namespace smbalg
