#include <catch_amalgamated.hpp>

#include <algorithm>  // for find_if
#include <random>     // for mt19937_64
#include <set>        // for set
#include <vector>     // for vector

#include "smbalg/analyzer.hpp"
#include "smbalg/chains.hpp"
#include "smbalg/congruence.hpp"
#include "smbalg/constructions.hpp"
#include "smbalg/errors.hpp"
#include "support.hpp"

namespace smbalg {

  namespace {
    Partition p(std::string_view text, std::size_t n) {
      return parse_partition(text, n);
    }

    bool has_violation(SmbReport const& r, std::string const& rule, std::vector<Elem> const& w) {
      return std::find(r.violations.begin(), r.violations.end(), Violation{rule, w})
             != r.violations.end();
    }

    std::vector<FiniteAlgebra> regular(std::size_t max_size) {
      return regular_corpus(1, max_size);
    }

    oracle::Ids join(oracle::Ids const& a, oracle::Ids const& b) {
      return test::ids(join_partitions(Partition(a), Partition(b)));
    }
  }  // namespace

  TEST_CASE("check_smb_over examples", "[smb]") {
    auto const e3 = example_e3();
    auto const r  = check_smb_over(e3, p("0 1 | 2", 3));
    CHECK(r.holds);
    CHECK(r.violations.empty());
    REQUIRE(r.class_order);
    // the class of 2 is below the class of 0 and 1
    CHECK(r.class_order->leq_elems(2, 0));
    CHECK_FALSE(r.class_order->leq_elems(0, 2));
    CHECK(r.class_order->is_partial_order());
    CHECK(r.class_order->is_meet_semilattice());

    CHECK(check_smb_over(example_b2(), Partition::full(2)).holds);

    auto const bad = check_smb_over(e3, Partition::discrete(3));
    CHECK_FALSE(bad.holds);
    CHECK(has_violation(bad, "Comm-mod-sim", {0, 1}));
    CHECK_FALSE(bad.class_order);

    auto const not_con = check_smb_over(e3, p("0 2 | 1", 3));
    CHECK_FALSE(not_con.holds);
    REQUIRE_FALSE(not_con.violations.empty());
    CHECK(not_con.violations.front().rule == "Congruence");

    auto const malcev = check_smb_over(e3, Partition::full(3));
    CHECK_FALSE(malcev.holds);
    CHECK(std::any_of(malcev.violations.begin(), malcev.violations.end(),
                      [](Violation const& v) { return v.rule == "Malcev-block"; }));

    FiniteAlgebra::Operations only_wedge;
    only_wedge.emplace("wedge", e3.op("wedge"));
    CHECK_THROWS_AS(check_smb_over(FiniteAlgebra("W", 3, only_wedge), Partition::full(3)), InvalidAlgebra);
  }

  TEST_CASE("check_smb_over agrees with the definitional oracle", "[smb][property]") {
    std::size_t holds = 0, total = 0;
    auto        check = [&](FiniteAlgebra const& alg) {
      for (auto const& ids : oracle::all_partitions(alg.size())) {
        bool const got = check_smb_over(alg, Partition(ids)).holds;
        CHECK(got == oracle::is_smb_over(alg, ids));
        holds += got ? 1 : 0;
        ++total;
      }
    };
    for (auto const& alg : generate_corpus({})) {
      if (alg.size() <= 5 && alg.has("wedge") && alg.has("d")) {
        check(alg);
      }
    }
    auto const sig = test::smb_signature();
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      check(random_algebra(3, sig, seed));
    }
    CHECK(holds > 20);
    CHECK(total > holds);
  }

  TEST_CASE("find_smb_congruences", "[smb]") {
    CHECK(find_smb_congruences(example_e3()) == std::vector<Partition>{p("0 1 | 2", 3)});
    auto const s2 = find_smb_congruences(example_s2());
    CHECK(std::find(s2.begin(), s2.end(), Partition::discrete(2)) != s2.end());
    CHECK(find_smb_congruences(example_b2()) == std::vector<Partition>{Partition::full(2)});
    CHECK(find_smb_congruences(example_n4()) == std::vector<Partition>{p("0 1 | 2 3", 4)});
  }

  TEST_CASE("detect_smb uses the wedge relation", "[smb]") {
    CHECK(wedge_relation(example_e3()) == p("0 1 | 2", 3));
    CHECK(detect_smb(example_e3()).holds);
    CHECK(detect_smb(example_n4()).holds);
    CHECK(detect_smb(example_n4()).sim == p("0 1 | 2 3", 4));
    for (auto const& alg : generate_corpus({})) {
      if (!alg.has("wedge") || !alg.has("d")) {
        continue;
      }
      auto const found = find_smb_congruences(alg);
      CHECK(found.size() <= 1);
      CHECK(detect_smb(alg).holds == !found.empty());
      if (!found.empty()) {
        CHECK(detect_smb(alg).sim == found.front());
      }
    }
  }

  TEST_CASE("check_regular examples", "[regular]") {
    auto const e3 = check_regular(example_e3(), p("0 1 | 2", 3));
    CHECK(e3.regular());

    auto const n4 = check_regular(example_n4(), p("0 1 | 2 3", 4));
    CHECK_FALSE(n4.regular());
    CHECK(n4.conditions[0].holds);
    REQUIRE_FALSE(n4.conditions[1].holds);
    CHECK(*n4.conditions[1].counterexample == std::vector<Elem>{0, 2});
    REQUIRE_FALSE(n4.conditions[3].holds);
    CHECK(*n4.conditions[3].counterexample == std::vector<Elem>{0, 2});
    CHECK(example_n4().op("wedge")({0, 2}) == 3);

    CHECK(check_regular(example_b2(), Partition::full(2)).regular());
    CHECK_THROWS_AS(check_regular(example_e3(), Partition::discrete(3)), HypothesisError);
  }

  TEST_CASE("check_regular agrees with the definitional oracle", "[regular][property]") {
    auto const sig = test::smb_signature();
    std::size_t smb = 0;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
      auto const alg = random_algebra(2, sig, seed);
      for (auto const& ids : oracle::all_partitions(2)) {
        if (!oracle::is_smb_over(alg, ids)) {
          continue;
        }
        ++smb;
        CHECK(check_regular(alg, Partition(ids)).regular() == oracle::is_regular_over(alg, ids));
      }
    }
    for (auto const& alg : generate_corpus({})) {
      if (alg.size() > 6 || !alg.has("wedge") || !alg.has("d")) {
        continue;
      }
      auto const r = detect_smb(alg);
      if (r.holds) {
        ++smb;
        CHECK(check_regular(alg, r.sim).regular() == oracle::is_regular_over(alg, test::ids(r.sim)));
      }
    }
    CHECK(smb > 20);
  }

  TEST_CASE("regular base examples", "[base]") {
    auto const e3 = check_regular_base(example_e3());
    REQUIRE(e3.names.size() == 12);
    CHECK(e3.names.front() == "Idem1");
    CHECK(e3.names.back() == "Regiv");
    for (auto const& v : e3.verdicts) {
      CHECK(v.holds);
    }
    REQUIRE(e3.recovered_sim);
    CHECK(*e3.recovered_sim == p("0 1 | 2", 3));

    auto const n4 = check_regular_base(example_n4());
    CHECK_FALSE(n4.holds());
    CHECK_FALSE(n4.recovered_sim);
    CHECK(*n4.verdicts[11].counterexample == std::vector<Elem>{0, 2});

    auto const one = check_regular_base(trivial_algebra());
    REQUIRE(one.recovered_sim);
    CHECK(one.recovered_sim->is_full());

    auto const& ids = regular_base_identities();
    auto const  mal = std::find_if(ids.begin(), ids.end(), [](auto const& b) { return b.name == "Mal"; });
    REQUIRE(mal != ids.end());
    CHECK(mal->parts.size() == 2);
  }

  TEST_CASE("regular base agrees with the definitional oracle", "[base][property]") {
    auto const sig = test::smb_signature();
    std::size_t regular_found = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      auto const alg  = random_algebra(2, sig, seed);
      bool const base = check_regular_base(alg).holds();
      CHECK(base == oracle::is_regular_smb(alg));
      regular_found += base ? 1 : 0;
    }
    for (auto const& alg : generate_corpus({})) {
      if (alg.size() <= 5 && alg.has("wedge") && alg.has("d")) {
        bool const base = check_regular_base(alg).holds();
        CHECK(base == oracle::is_regular_smb(alg));
        regular_found += base ? 1 : 0;
      }
    }
    CHECK(regular_found > 10);
  }

  TEST_CASE("Taylor term", "[taylor]") {
    CHECK(taylor_check(example_e3()).holds);
    CHECK(taylor_check(example_b2()).holds);
    CHECK(taylor_check(example_n4()).holds);
    for (auto const& alg : generate_corpus({})) {
      if (alg.has("wedge") && alg.has("d") && detect_smb(alg).holds) {
        CHECK(taylor_check(alg).holds);
      }
    }
    // a projection algebra has no Taylor term
    FiniteAlgebra::Operations ops;
    ops.emplace("wedge", OperationTable::tabulate(2, 2, [](auto a) { return a[0]; }));
    ops.emplace("d", OperationTable::tabulate(3, 2, [](auto a) { return a[0]; }));
    CHECK_FALSE(taylor_check(FiniteAlgebra("P2", 2, ops)).holds);
  }

  TEST_CASE("regular algebras: wedge from d and class of terms", "[regular][property]") {
    std::mt19937_64 rng(3);
    auto const      sig = test::smb_signature();
    auto const      alg_list = regular(6);
    REQUIRE(alg_list.size() >= 20);
    for (auto const& alg : alg_list) {
      auto const& w = alg.op("wedge");
      auto const& d = alg.op("d");
      for (Elem x = 0; x < alg.size(); ++x) {
        for (Elem y = 0; y < alg.size(); ++y) {
          CHECK(w({x, y}) == d({x, x, y}));
          CHECK(w({x, y}) == d({y, x, x}));
        }
      }
      auto const sim = *check_regular_base(alg).recovered_sim;
      auto const q   = quotient_algebra(alg, sim);
      auto const& qw = q.algebra.op("wedge");
      int         tried = 0;
      while (tried < 100) {
        Term const t = test::random_term(rng, sig, 3, 4);
        auto const occ = t.occurring_vars();
        if (t.num_vars() != 3 || std::find(occ.begin(), occ.end(), false) != occ.end()) {
          continue;
        }
        ++tried;
        oracle::for_each_tuple(alg.size(), 3, [&](std::vector<Elem> const& a) {
          Elem const meet = qw({qw({q.class_map[a[0]], q.class_map[a[1]]}), q.class_map[a[2]]});
          REQUIRE(q.class_map[eval_term(alg, t, a)] == meet);
        });
      }
    }
  }

  TEST_CASE("HSP closure of SMB algebras", "[smb][property]") {
    std::vector<FiniteAlgebra> smb;
    for (auto const& alg : generate_corpus({})) {
      if (alg.size() <= 6 && alg.has("wedge") && alg.has("d") && detect_smb(alg).holds) {
        smb.push_back(alg);
      }
    }
    REQUIRE(smb.size() > 10);
    for (auto const& alg : smb) {
      auto const sim = detect_smb(alg).sim;
      for (auto const& theta : congruence_lattice(alg).elements) {
        auto const q       = quotient_algebra(alg, theta);
        // (sim v theta)/theta on the quotient universe
        std::vector<std::size_t> labels(q.algebra.size());
        auto const               j = join_partitions(sim, theta);
        for (Elem x = 0; x < alg.size(); ++x) {
          labels[q.class_map[x]] = j.class_of(x);
        }
        CHECK(check_smb_over(q.algebra, Partition(labels)).holds);
        CHECK(detect_smb(q.algebra).holds);
      }
      for (auto const& sub : subuniverses(alg)) {
        CHECK(detect_smb(subalgebra(alg, sub)).holds);
      }
    }
    for (std::size_t i = 0; i < smb.size(); i += 3) {
      for (std::size_t j = 0; j < smb.size(); j += 4) {
        if (smb[i].size() * smb[j].size() <= 24) {
          CHECK(detect_smb(product(smb[i], smb[j])).holds);
        }
      }
    }
  }

  TEST_CASE("Cg = D^3 with polynomial chains", "[cg-d3]") {
    auto const e3 = example_e3();
    auto const r  = verify_cg_d3(e3, 0, 1);
    CHECK(r.equal);
    CHECK(r.cg == BinaryRelation::from_partition(p("0 1 | 2", 3)));
    REQUIRE(r.chains.count({0, 1}) == 1);
    CHECK(r.chains.at({0, 1}).polynomials.size() <= 6);
    CHECK(replays(e3, r.chains.at({0, 1}), 0, 1));

    auto const full = verify_cg_d3(e3, 0, 2);
    CHECK(full.equal);
    CHECK(full.cg == BinaryRelation::full(3));
    CHECK(full.chains.size() == 9);

    auto const same = verify_cg_d3(e3, 1, 1);
    CHECK(same.equal);
    CHECK(same.cg == BinaryRelation::diagonal(3));

    CHECK_THROWS_AS(verify_cg_d3(example_n4(), 0, 1), HypothesisError);
  }

  TEST_CASE("Cg = D^3 against the naive closures", "[cg-d3][property]") {
    for (auto const& alg : regular(5)) {
      SmbContext ctx(alg);
      for (Elem a = 0; a < alg.size(); ++a) {
        for (Elem b = a + 1; b < alg.size(); ++b) {
          auto const r = verify_cg_d3(ctx, a, b);
          auto const d = oracle::d_relation(alg, a, b);
          auto const d3 = oracle::compose(oracle::compose(d, d), d);
          auto const cg = oracle::principal_fixpoint(alg, a, b);
          std::set<std::vector<Elem>> cg_pairs;
          for (Elem x = 0; x < alg.size(); ++x) {
            for (Elem y = 0; y < alg.size(); ++y) {
              if (cg[x] == cg[y]) {
                cg_pairs.insert({x, y});
              }
            }
          }
          CHECK(d3 == cg_pairs);
          CHECK(r.equal);
          for (auto const& [cd, chain] : r.chains) {
            CHECK(chain.polynomials.size() <= 6);
            CHECK(chain.elements.front() == cd.first);
            CHECK(chain.elements.back() == cd.second);
            CHECK(replays(alg, chain, a, b));
          }
          CHECK(r.chains.size() == cg_pairs.size());
        }
      }
    }
  }

  TEST_CASE("join membership chains", "[final]") {
    auto const e3  = example_e3();
    auto const sim = p("0 1 | 2", 3);
    auto const m   = join_membership_chain(e3, sim, 0, 1, 1, 0);
    CHECK(m.member);
    REQUIRE(m.chain);
    CHECK(m.chain->c.front() == 1);
    CHECK(m.chain->d.back() == 0);

    auto const trivial = join_membership_chain(e3, sim, 0, 1, 2, 2);
    CHECK(trivial.member);
    REQUIRE(trivial.chain);
    CHECK(trivial.chain->polynomials.empty());

    CHECK_FALSE(join_membership_chain(e3, sim, 0, 0, 0, 2).member);

    // chains are well formed on every regular algebra
    for (auto const& alg : regular(4)) {
      SmbContext ctx(alg);
      auto const& s = ctx.sim();
      oracle::for_each_tuple(alg.size(), 4, [&](std::vector<Elem> const& t) {
        auto const r = join_membership_chain(ctx, s, t[0], t[1], t[2], t[3]);
        auto const want = join(oracle::principal(alg, t[0], t[1]), test::ids(s));
        REQUIRE(r.member == (want[t[2]] == want[t[3]]));
        if (!r.member) {
          return;
        }
        auto const& ch = *r.chain;
        REQUIRE(ch.c.size() == ch.d.size());
        REQUIRE(ch.polynomials.size() + 1 == ch.c.size());
        CHECK(ch.c.front() == t[2]);
        CHECK(ch.d.back() == t[3]);
        for (std::size_t i = 0; i < ch.c.size(); ++i) {
          CHECK(s.related(ch.c[i], ch.d[i]));
        }
        for (std::size_t i = 1; i < ch.c.size(); ++i) {
          Elem const pa = eval_term(alg, ch.polynomials[i - 1], std::vector<Elem>{t[0]});
          Elem const pb = eval_term(alg, ch.polynomials[i - 1], std::vector<Elem>{t[1]});
          CHECK(std::set<Elem>{pa, pb} == std::set<Elem>{ch.d[i - 1], ch.c[i]});
        }
      });
    }
  }

  TEST_CASE("cgvsim_below", "[final]") {
    auto const e3 = example_e3();
    auto const same = cgvsim_below(e3, 0, 1, 1, 1);
    REQUIRE(same);
    CHECK(same->e == 1);
    CHECK(same->f == 1);

    auto const in_block = cgvsim_below(e3, 0, 1, 0, 1);
    REQUIRE(in_block);
    auto const sim = p("0 1 | 2", 3);
    auto const cg  = principal_congruence(e3, 0, 1);
    CHECK(sim.related(in_block->e, in_block->f));
    CHECK(cg.related(0, in_block->e));
    CHECK(cg.related(1, in_block->f));

    auto const down = cgvsim_below(e3, 0, 2, 1, 2);
    REQUIRE(down);
    CHECK(down->e == 2);
    CHECK(down->f == 2);

    CHECK_FALSE(cgvsim_below(e3, 0, 0, 0, 2));
  }

  TEST_CASE("final-section biconditionals", "[final]") {
    auto const e3 = example_e3();
    CHECK(check_cgvsim(e3, 0, 1, 1, 0));
    CHECK(check_cgvsim(e3, 0, 1, 2, 2));
    CHECK_FALSE(check_cgvsim(e3, 0, 0, 0, 2));

    CHECK(check_undersim(e3, 0, 1, 0, 1));
    CHECK(check_undersim(e3, 1, 1, 0, 2));
    CHECK_FALSE(check_undersim(e3, 0, 2, 0, 2));

    CHECK(commutator_below_sim(e3, 0, 1, 0, 1));
    CHECK(commutator_below_sim(e3, 2, 2, 0, 2));
    CHECK_FALSE(commutator_below_sim(e3, 0, 2, 0, 2));

    CHECK_THROWS_AS(check_cgvsim(example_n4(), 0, 1, 0, 1), HypothesisError);
  }

  TEST_CASE("final-section checks against oracle sides", "[final][property]") {
    std::size_t algebras = 0;
    for (auto const& alg : regular(4)) {
      ++algebras;
      SmbContext  ctx(alg);
      auto const  sim = test::ids(ctx.sim());
      std::size_t const n = alg.size();
      std::vector<oracle::Ids> cg(n * n);
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
          cg[a * n + b] = oracle::principal_fixpoint(alg, a, b);
        }
      }
      oracle::for_each_tuple(n, 4, [&](std::vector<Elem> const& t) {
        auto const& ab = cg[t[0] * n + t[1]];
        auto const& cd = cg[t[2] * n + t[3]];
        auto const  j  = join(ab, sim);
        REQUIRE(check_cgvsim(ctx, t[0], t[1], t[2], t[3]) == (j[t[2]] == j[t[3]]));

        bool meet_below = true;
        for (Elem x = 0; x < n; ++x) {
          for (Elem y = 0; y < n; ++y) {
            if (ab[x] == ab[y] && cd[x] == cd[y] && sim[x] != sim[y]) {
              meet_below = false;
            }
          }
        }
        REQUIRE(check_undersim(ctx, t[0], t[1], t[2], t[3]) == meet_below);

        auto const comm = oracle::commutator(alg, ab, cd);
        REQUIRE(commutator_below_sim(ctx, t[0], t[1], t[2], t[3]) == oracle::refines(comm, sim));
      });
    }
    CHECK(algebras > 5);
  }

  TEST_CASE("alternating chains and the wedge fold", "[final]") {
    auto const e3  = example_e3();
    auto const sim = p("0 1 | 2", 3);

    auto const k0 = leminjection_fold(e3, sim, Partition::discrete(3), {1, 1});
    CHECK(k0.e == 1);
    CHECK(k0.holds());

    auto const full = leminjection_fold(e3, sim, Partition::full(3), {0, 0, 2, 2});
    CHECK(full.e == 2);
    CHECK(full.holds());

    CHECK_THROWS_AS(leminjection_fold(e3, sim, Partition::discrete(3), {0, 2}), InvalidAlgebra);

    // N4 with theta = Cg(2,3): chains from the top block to the bottom one
    auto const n4    = example_n4();
    auto const nsim  = p("0 1 | 2 3", 4);
    auto const theta = principal_congruence(n4, 2, 3);
    for (Elem a = 0; a < 4; ++a) {
      for (Elem b = 0; b < 4; ++b) {
        auto const chain = alternating_chain(nsim, theta, a, b);
        bool const want  = join_partitions(nsim, theta).related(a, b);
        REQUIRE(chain.has_value() == want);
        if (!chain) {
          continue;
        }
        auto const r = leminjection_fold(n4, nsim, theta, *chain);
        CHECK(r.holds());
        // brute-force the class-system inclusion for [a]
        for (Elem x = 0; x < 4; ++x) {
          if (!nsim.related(x, a)) {
            continue;
          }
          bool hit = false;
          for (Elem y = 0; y < 4; ++y) {
            hit = hit || (nsim.related(y, r.e) && theta.related(x, y));
          }
          CHECK(hit);
        }
      }
    }
  }

  TEST_CASE("SmbContext caches", "[smb]") {
    auto const e3 = example_e3();
    SmbContext ctx(e3);
    CHECK(ctx.sim() == p("0 1 | 2", 3));
    CHECK(ctx.in_cg(0, 1, 1, 0));
    CHECK_FALSE(ctx.in_cg(0, 1, 0, 2));
    CHECK(ctx.wedge(0, 2) == 2);
    CHECK(ctx.d(0, 1, 1) == 0);
    CHECK(ctx.quotient().algebra.size() == 2);

    auto const n4 = example_n4();
    SmbContext bad(n4);
    CHECK_THROWS_AS(bad.sim(), HypothesisError);
  }

}  // namespace smbalg
