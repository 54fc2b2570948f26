#include <catch_amalgamated.hpp>

#include <algorithm>  // for all_of, sort
#include <set>        // for set
#include <string>     // for string
#include <vector>     // for vector

#include "smbalg/analyzer.hpp"
#include "smbalg/constructions.hpp"
#include "smbalg/errors.hpp"
#include "smbalg/identity.hpp"
#include "support.hpp"

namespace smbalg {

  namespace {
    // w restricted to the first n elements of b
    bool restricts_to(FiniteAlgebra const& b, FiniteAlgebra const& a, std::string const& sym) {
      auto const& w = a.op(sym);
      auto const& v = b.op(sym);
      bool        ok = true;
      oracle::for_each_tuple(a.size(), w.arity(), [&](std::vector<Elem> const& x) {
        ok = ok && oracle::call(v, x) == oracle::call(w, x);
      });
      return ok;
    }

    // x o y = v(x, ..., x, y)
    Elem circ(OperationTable const& v, Elem x, Elem y) {
      std::vector<Elem> args(v.arity(), x);
      args.back() = y;
      return oracle::call(v, args);
    }

    FiniteAlgebra single(std::string name, std::size_t n, OperationTable w) {
      return FiniteAlgebra(std::move(name), n, {{"w", std::move(w)}});
    }

    std::vector<FiniteAlgebra> wnu_inputs() {
      std::vector<FiniteAlgebra> out;
      out.push_back(single("one", 1, OperationTable(3, 1, {0})));
      out.push_back(single("B2d", 2, example_b2().op("d")));
      out.push_back(single("E3d", 3, example_e3().op("d")));
      out.push_back(single("S2d", 2, example_s2().op("d")));
      out.push_back(single("min4", 2, OperationTable::tabulate(4, 2, [](auto v) {
                             return *std::min_element(v.begin(), v.end());
                           })));
      // majority on a 3-element set, first argument on ties
      out.push_back(single("maj3", 3, OperationTable::tabulate(3, 3, [](auto v) {
                             return v[1] == v[2] ? v[1] : v[0];
                           })));
      return out;
    }
  }  // namespace

  TEST_CASE("E3 is regular SMB with congruence chain 0 < sim < 1", "[constructions][e3]") {
    auto const e3 = example_e3();
    auto const base = check_regular_base(e3);
    REQUIRE(base.holds());
    CHECK(to_string(*base.recovered_sim) == "0 1 | 2");

    auto cons = oracle::congruences(e3);
    std::sort(cons.begin(), cons.end());
    REQUIRE(cons.size() == 3);
    std::set<oracle::Ids> const expected{{0, 0, 0}, {0, 0, 1}, {0, 1, 2}};
    CHECK(std::set<oracle::Ids>(cons.begin(), cons.end()) == expected);

    // 2 lies in the image of every nonconstant unary polynomial
    std::size_t nonconstant = 0;
    for (auto const& p : oracle::unary_polynomials(e3)) {
      if (std::all_of(p.begin(), p.end(), [&](Elem v) { return v == p[0]; })) {
        continue;
      }
      ++nonconstant;
      CHECK(std::find(p.begin(), p.end(), Elem(2)) != p.end());
    }
    CHECK(nonconstant > 0);
  }

  TEST_CASE("N4 tables and failures", "[constructions][n4]") {
    auto const n4 = example_n4();
    REQUIRE(n4.size() == 4);
    auto const block = [](Elem x) { return x / 2; };
    for (Elem a = 0; a < 4; ++a) {
      for (Elem b = 0; b < 4; ++b) {
        Elem const want = block(a) == block(b) ? b : 3;
        CHECK(n4.op("wedge")({a, b}) == want);
        for (Elem c = 0; c < 4; ++c) {
          Elem const dv = block(a) == block(b) && block(b) == block(c) ? (a ^ b ^ c) : 3;
          CHECK(n4.op("d")({a, b, c}) == dv);
        }
      }
    }
    auto const sim = parse_partition("0 1 | 2 3", 4);
    CHECK(check_smb_over(n4, sim).holds);
    auto const reg = check_regular(n4, sim);
    CHECK_FALSE(reg.regular());
    REQUIRE_FALSE(reg.conditions[3].holds);
    CHECK(*reg.conditions[3].counterexample == std::vector<Elem>{0, 2});
  }

  TEST_CASE("glue_smb", "[constructions][glue]") {
    auto const z2  = affine_block(2);
    auto const one = chain_semilattice(1);

    // a one-point semilattice with a Z2 block is B2
    auto const b2 = glue_smb(one, {z2}, {0});
    CHECK(b2.op("wedge") == example_b2().op("wedge"));
    CHECK(b2.op("d") == example_b2().op("d"));

    // singleton blocks give the semilattice itself, regular over 0_A
    auto const c3 = chain_semilattice(3);
    auto const t1 = trivial_algebra();
    auto const g  = glue_smb(c3, {t1, t1, t1}, {0, 1, 2});
    CHECK(g.op("wedge") == c3.op("wedge"));
    CHECK(oracle::is_regular_over(g, oracle::Ids{0, 1, 2}));
    CHECK(check_regular_base(g).holds());

    CHECK(to_string(block_partition({z2, t1, affine_block(3)})) == "0 1 | 2 | 3 4 5");

    CHECK_THROWS_AS(glue_smb(c3, {z2, z2}, {0, 1, 2}), InvalidAlgebra);
    CHECK_THROWS_AS(glue_smb(c3, {t1, t1, t1}, {0, 1, 7}), InvalidAlgebra);
  }

  TEST_CASE("glued algebras are SMB over their block partition", "[constructions][glue][property]") {
    auto const glued = generate_corpus({.seed = 3, .min_size = 2, .max_size = 7, .families = {"glued"}});
    REQUIRE(glued.size() >= 10);
    for (auto const& alg : glued) {
      INFO(alg.name());
      CHECK(oracle::is_smb_over(alg, test::ids(wedge_relation(alg))));
    }
    for (auto const& alg : nonregular_glued(5, 6, 10)) {
      INFO(alg.name());
      CHECK(oracle::is_smb_over(alg, test::ids(wedge_relation(alg))));
      CHECK_FALSE(oracle::is_regular_smb(alg));
    }
  }

  TEST_CASE("extend_simple_type5", "[constructions][extend]") {
    for (auto const& a : wnu_inputs()) {
      INFO(a.name());
      auto const  b  = extend_simple_type5(a, "w");
      std::size_t const n = a.size();
      REQUIRE(b.size() == n + 3);
      CHECK(b.name() == a.name() + "+3");
      auto const& v = b.op("w");
      CHECK(v.arity() == a.op("w").arity());
      CHECK(restricts_to(b, a, "w"));
      CHECK(classify_operation(b, "w").wnu);
      CHECK(oracle::congruences(b).size() == 2);

      Elem const zero = n, s = n + 1, top = n + 2;
      // element i stands for a_{i+1}; a_{n+1} is top
      auto const a_ = [&](std::size_t i) { return i == n + 1 ? top : Elem(i - 1); };
      oracle::for_each_tuple(b.size(), v.arity(), [&](std::vector<Elem> const& x) {
        if (std::find(x.begin(), x.end(), zero) != x.end()) {
          REQUIRE(oracle::call(v, x) == zero);
        }
      });
      for (std::size_t i = 1; i <= n; ++i) {
        CHECK(circ(v, s, a_(i)) == a_(i + 1));
        CHECK(circ(v, a_(i), s) == a_(i + 1));
        CHECK(circ(v, top, a_(i)) == top);
        CHECK(circ(v, a_(i), top) == s);
      }
      CHECK(circ(v, s, top) == zero);
      CHECK(circ(v, top, s) == a_(1));

      // {0, a_{n+1}} is closed and v is the meet for 0 < a_{n+1}
      oracle::for_each_tuple(2, v.arity(), [&](std::vector<Elem> const& bits) {
        std::vector<Elem> x;
        for (auto bit : bits) {
          x.push_back(bit ? top : zero);
        }
        bool const all_top = std::all_of(bits.begin(), bits.end(), [](Elem t) { return t == 1; });
        CHECK(oracle::call(v, x) == (all_top ? top : zero));
      });
    }
  }

  TEST_CASE("extend_simple_type5 rejects non-wnu input", "[constructions][extend]") {
    // first projection is not a wnu
    auto const proj = single("p1", 2, OperationTable::tabulate(3, 2, [](auto v) { return v[0]; }));
    CHECK_THROWS_AS(extend_simple_type5(proj, "w"), HypothesisError);
    CHECK_THROWS_AS(extend_simple_type5(example_e3(), "wedge"), HypothesisError);
    CHECK_THROWS_AS(extend_simple_type5(example_e3(), "nope"), Error);
  }

  TEST_CASE("enumeration and random algebras", "[constructions][enumerate]") {
    auto const sig = test::smb_signature();
    auto const all = exhaustive_enumerate(2, sig);
    REQUIRE(all.count() == 4096);

    std::set<std::vector<Elem>> seen;
    for (std::uint64_t i = 0; i < all.count(); ++i) {
      auto const        alg = all[i];
      std::vector<Elem> key(alg.op("d").entries().begin(), alg.op("d").entries().end());
      key.insert(key.end(), alg.op("wedge").entries().begin(), alg.op("wedge").entries().end());
      seen.insert(key);
    }
    CHECK(seen.size() == 4096);

    CHECK_THROWS_AS(AlgebraEnumerator(3, sig, 1000), CapExceeded);

    auto const r1 = random_algebra(4, sig, 99);
    auto const r2 = random_algebra(4, sig, 99);
    auto const r3 = random_algebra(4, sig, 100);
    CHECK(r1 == r2);
    CHECK_FALSE(r1 == r3);
    CHECK(r1.signature() == sig);
  }

  TEST_CASE("corpus is deterministic with unique names", "[constructions][corpus]") {
    CorpusSpec spec;
    spec.families = {"builtin", "semilattice", "affine", "glued", "regular", "random"};
    auto const a = generate_corpus(spec);
    auto const b = generate_corpus(spec);
    CHECK(a == b);
    std::set<std::string> names;
    for (auto const& alg : a) {
      CHECK(names.insert(alg.name()).second);
      CHECK(alg.size() >= spec.min_size);
      CHECK(alg.size() <= spec.max_size);
    }
    spec.seed = 2;
    CHECK_FALSE(generate_corpus(spec) == a);

    auto const reg = regular_corpus(7, 8);
    CHECK(reg.size() >= 20);
    for (auto const& alg : reg) {
      INFO(alg.name());
      CHECK(check_regular_base(alg).holds());
    }
  }

  TEST_CASE("subuniverses, subalgebras and products", "[constructions][hsp]") {
    auto const e3   = example_e3();
    auto       subs = subuniverses(e3);
    std::sort(subs.begin(), subs.end());
    // every nonempty subset is closed
    std::vector<std::vector<Elem>> const want{{0}, {0, 1}, {0, 1, 2}, {0, 2}, {1}, {1, 2}, {2}};
    CHECK(subs == want);

    auto const s = subalgebra(e3, {0, 2});
    REQUIRE(s.size() == 2);
    CHECK(s.op("d")({0, 1, 0}) == 1);
    CHECK(s.op("d")({0, 0, 0}) == 0);
    CHECK_THROWS_AS(subalgebra(affine_block(3), {0, 1}), InvalidAlgebra);

    auto const p = product(example_b2(), example_s2());
    REQUIRE(p.size() == 4);
    for (Elem x = 0; x < 4; ++x) {
      for (Elem y = 0; y < 4; ++y) {
        Elem const l = example_b2().op("wedge")({x / 2, y / 2});
        Elem const r = example_s2().op("wedge")({x % 2, y % 2});
        CHECK(p.op("wedge")({x, y}) == l * 2 + r);
      }
    }
    CHECK_THROWS_AS(product(affine_block(9), affine_block(9), 64), CapExceeded);
    CHECK_THROWS_AS(product(example_e3(), single("x", 1, OperationTable(3, 1, {0}))), InvalidAlgebra);
    CHECK_THROWS_AS(subuniverses(affine_block(13)), CapExceeded);
  }

}  // namespace smbalg
