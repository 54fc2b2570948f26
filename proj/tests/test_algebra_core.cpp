#include <catch_amalgamated.hpp>

#include <random>  // for mt19937_64
#include <vector>  // for vector

#include "smbalg/algebra.hpp"
#include "smbalg/constructions.hpp"
#include "smbalg/errors.hpp"
#include "smbalg/identity.hpp"
#include "smbalg/term.hpp"
#include "smbalg/text.hpp"
#include "support.hpp"

namespace smbalg {

  namespace {
    Term const x = Term::var(0);
    Term const y = Term::var(1);
    Term const z = Term::var(2);

    Elem eval(FiniteAlgebra const& alg, Term const& t, std::vector<Elem> const& a) {
      return eval_term(alg, t, a);
    }

    // d of E3 from its description: addition mod 2 on {0,1}, 2 absorbing.
    Elem e3_d(Elem a, Elem b, Elem c) {
      if (a == 2 || b == 2 || c == 2) {
        return 2;
      }
      return a ^ b ^ c;
    }
  }  // namespace

  TEST_CASE("OperationTable validates and indexes last argument fastest", "[algebra]") {
    auto const t = OperationTable(2, 3, {0, 1, 2, 1, 2, 0, 2, 0, 1});
    CHECK(t({1, 2}) == 0);
    CHECK(t({2, 1}) == 0);
    CHECK(t.at_index(1 * 3 + 2) == t({1, 2}));

    CHECK_THROWS_AS(OperationTable(2, 3, {0, 1, 2}), InvalidAlgebra);
    CHECK_THROWS_AS(OperationTable(2, 2, {0, 1, 2, 0}), InvalidAlgebra);
    CHECK_THROWS_AS(OperationTable(0, 2, {0}), InvalidAlgebra);

    auto const s = OperationTable::tabulate(3, 2, [](auto args) { return args[0] ^ args[1] ^ args[2]; });
    CHECK(s({1, 0, 0}) == 1);
    CHECK(s({1, 1, 0}) == 0);
    CHECK(s.at_index(0b011) == 0);
    CHECK(s.at_index(0b001) == 1);
  }

  TEST_CASE("E3 tables follow the description", "[algebra][e3]") {
    auto const alg = example_e3();
    REQUIRE(alg.size() == 3);
    auto const& d = alg.op("d");
    for (Elem a = 0; a < 3; ++a) {
      for (Elem b = 0; b < 3; ++b) {
        for (Elem c = 0; c < 3; ++c) {
          CHECK(d({a, b, c}) == e3_d(a, b, c));
        }
        CHECK(alg.op("wedge")({a, b}) == e3_d(a, a, b));
      }
    }
    CHECK(alg.is_idempotent());
  }

  TEST_CASE("eval_term", "[algebra][term]") {
    auto const e3 = example_e3();
    CHECK(eval(e3, app("d", x, y, z), {0, 1, 0}) == 1);
    CHECK(eval(e3, x, {2}) == 2);
    CHECK(eval(e3, app("d", x, x, y), {0, 2}) == 2);
    CHECK(eval(e3, app("d", x, Term::constant(1), y), {0, 0}) == 1);

    CHECK_THROWS_AS(eval(e3, app("f", x), {0}), EvalError);
    CHECK_THROWS_AS(eval(e3, app("d", x, y), {0, 1}), EvalError);
    CHECK_THROWS_AS(eval(e3, app("d", x, y, z), {0, 1}), EvalError);
    CHECK_THROWS_AS(eval(e3, Term::constant(3), {}), EvalError);
    try {
      eval(e3, app("f", x), {0});
    } catch (EvalError const& e) {
      CHECK(std::string(e.what()).find("'f'") != std::string::npos);
    }
  }

  TEST_CASE("materialize_term", "[algebra][term]") {
    auto const e3 = example_e3();
    auto const w  = materialize_term(e3, app("d", x, x, y), 2);
    CHECK(w == OperationTable(2, 3, {0, 1, 2, 0, 1, 2, 2, 2, 2}));
    CHECK(w == e3.op("wedge"));

    auto const id = materialize_term(e3, x, 1);
    CHECK(id == OperationTable(1, 3, {0, 1, 2}));

    auto const regiv = materialize_term(e3, app("wedge", app("wedge", x, y), y), 2);
    CHECK(regiv == e3.op("wedge"));

    // a variable index beyond the arity is rejected
    CHECK_THROWS_AS(materialize_term(e3, z, 2), EvalError);
  }

  TEST_CASE("materialized tables agree with recursive evaluation", "[algebra][term][property]") {
    std::mt19937_64 rng(17);
    auto const      sig = test::smb_signature();
    for (auto const& alg : generate_corpus({})) {
      if (alg.size() > 5 || !alg.has("wedge")) {
        continue;
      }
      for (int i = 0; i < 10; ++i) {
        Term const        t   = test::random_term(rng, sig, 3, 4);
        OperationTable const tab = materialize_term(alg, t, 3);
        oracle::for_each_tuple(alg.size(), 3, [&](std::vector<Elem> const& a) {
          REQUIRE(tab(std::span<Elem const>(a)) == eval(alg, t, a));
        });
      }
    }
  }

  TEST_CASE("idempotent algebras have idempotent term operations", "[algebra][term][property]") {
    std::mt19937_64 rng(5);
    auto const      sig    = test::smb_signature();
    std::size_t     tested = 0;
    for (auto const& alg : generate_corpus({})) {
      if (!alg.is_idempotent() || !alg.has("wedge")) {
        continue;
      }
      ++tested;
      for (int i = 0; i < 100; ++i) {
        Term const t = test::random_term(rng, sig, 4, 5);
        for (Elem a = 0; a < alg.size(); ++a) {
          REQUIRE(eval(alg, t, std::vector<Elem>(4, a)) == a);
        }
      }
    }
    CHECK(tested > 10);
  }

  TEST_CASE("check_identity", "[algebra][identity]") {
    auto const e3 = example_e3();
    CHECK(check_identity(e3, parse_identity("wedge(wedge(x,y),y) = wedge(x,y)")).holds);

    auto const v = check_identity(e3, {app("d", x, y, z), x});
    REQUIRE_FALSE(v.holds);
    // least failing assignment in lexicographic order
    CHECK(*v.counterexample == std::vector<Elem>{0, 0, 1});
    CHECK(eval(e3, app("d", x, y, z), {0, 1, 0}) != 0);

    auto const s2 = example_s2();
    CHECK(check_identity(s2, parse_identity("wedge(wedge(x,y),wedge(y,x)) = wedge(y,x)")).holds);

    CHECK(check_identity(e3, parse_identity("x = x")).holds);
    CHECK_FALSE(check_identity(e3, parse_identity("x = y")).holds);
  }

  TEST_CASE("check_quasiidentity", "[algebra][identity]") {
    auto const e3 = example_e3();
    auto const n4 = example_n4();
    auto const wedge_compat = parse_quasiidentity(
        "wedge(x,y)=y & wedge(y,x)=x -> wedge(wedge(x,z),wedge(y,z)) = wedge(y,z)");
    auto const d_compat = parse_quasiidentity(
        "wedge(x,y)=y & wedge(y,x)=x -> wedge(d(x,z,u),d(y,z,u)) = d(y,z,u)");
    CHECK(check_quasiidentity(e3, wedge_compat).holds);
    CHECK(check_quasiidentity(e3, d_compat).holds);
    CHECK(check_quasiidentity(n4, d_compat).holds);

    // x = y together with wedge(x,y) = x forces nothing beyond x = y
    auto const vacuous = parse_quasiidentity("x = y & wedge(x,y) = y -> x = y");
    CHECK(check_quasiidentity(e3, vacuous).holds);
    auto const never = parse_quasiidentity("d(x,x,y) = @0 & d(x,x,y) = @1 -> x = y");
    CHECK(check_quasiidentity(e3, never).holds);

    auto const fails = parse_quasiidentity("wedge(x,y) = y -> x = y");
    auto const v     = check_quasiidentity(e3, fails);
    REQUIRE_FALSE(v.holds);
    CHECK(*v.counterexample == std::vector<Elem>{0, 1});

    Quasiidentity const plain{{}, {app("wedge", x, x), x}};
    CHECK(check_quasiidentity(e3, plain).holds);
  }

  TEST_CASE("classify_operation", "[algebra][identity]") {
    auto const e3 = classify_operation(example_e3(), "d");
    CHECK(e3.idempotent);
    CHECK(e3.wnu);
    CHECK(e3.special_wnu);
    CHECK_FALSE(e3.malcev);

    auto const b2 = example_b2();
    CHECK(classify_operation(b2, "d").malcev);
    auto const w = classify_operation(b2, "wedge");
    CHECK(w.second_projection);
    CHECK_FALSE(w.wnu);

    CHECK_THROWS_AS(classify_operation(b2, "nope"), EvalError);
  }

  TEST_CASE("wnu operations satisfy w(y,x,...,x) = x o y", "[algebra][identity][property]") {
    std::size_t wnus = 0;
    for (auto const& alg : generate_corpus({})) {
      for (auto const& [sym, f] : alg.operations()) {
        if (!classify_operation(alg, sym).wnu) {
          continue;
        }
        ++wnus;
        std::size_t const k = f.arity();
        for (Elem a = 0; a < alg.size(); ++a) {
          for (Elem b = 0; b < alg.size(); ++b) {
            std::vector<Elem> left(k, a), right(k, a);
            left[k - 1] = b;
            right[0]    = b;
            REQUIRE(f(std::span<Elem const>(left)) == f(std::span<Elem const>(right)));
          }
        }
      }
    }
    CHECK(wnus > 0);
  }

  TEST_CASE("FiniteAlgebra rejects mismatched tables", "[algebra]") {
    FiniteAlgebra::Operations ops;
    ops.emplace("f", OperationTable(1, 2, {0, 1}));
    CHECK_THROWS_AS(FiniteAlgebra("bad", 3, ops), InvalidAlgebra);
    CHECK_NOTHROW(FiniteAlgebra("ok", 2, ops));
    CHECK_THROWS_AS(FiniteAlgebra("empty", 0, {}), InvalidAlgebra);
  }

}  // namespace smbalg
