#include "smbalg/cli.hpp"

#include <algorithm>  // for reverse, max
#include <fstream>    // for ifstream, ofstream
#include <ostream>    // for ostream
#include <sstream>    // for ostringstream

#include <CLI11.hpp>
#include <json.hpp>

#include "report_json.hpp"
#include "smbalg/analyzer.hpp"
#include "smbalg/chains.hpp"
#include "smbalg/congruence.hpp"
#include "smbalg/constructions.hpp"
#include "smbalg/errors.hpp"
#include "smbalg/report.hpp"
#include "smbalg/text.hpp"
#include "smbalg/wnu.hpp"

namespace smbalg {

  namespace {
    using nlohmann::json;

    // Unreadable files and malformed arguments.
    class UsageError : public Error {
     public:
      using Error::Error;
    };

    struct Options {
      bool        json = false;
      std::string file;
      std::string sim;
      std::string output;
      std::string kind;
      std::string symbol;
      std::string p1;
      std::string p2;
      std::size_t a        = 0;
      std::size_t b        = 0;
      std::uint64_t seed   = 1;
      std::size_t max_size = 6;
    };

    std::string read_file(std::string const& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        throw UsageError("cannot read '" + path + "'");
      }
      std::ostringstream buf;
      buf << in.rdbuf();
      return buf.str();
    }

    FiniteAlgebra load(std::string const& path) {
      std::string const text = read_file(path);
      try {
        return parse_algebra(text);
      } catch (ParseError const& e) {
        throw UsageError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column())
                         + ": " + e.reason());
      }
    }

    void write_text(Options const& opt, std::string const& text, std::ostream& out) {
      if (opt.output.empty()) {
        out << text;
        return;
      }
      std::ofstream f(opt.output, std::ios::binary);
      if (!f || !(f << text)) {
        throw UsageError("cannot write '" + opt.output + "'");
      }
    }

    std::optional<Partition> sim_option(Options const& opt, FiniteAlgebra const& alg) {
      if (opt.sim.empty()) {
        return std::nullopt;
      }
      return parse_partition(opt.sim, alg.size());
    }

    Elem element(std::size_t x, FiniteAlgebra const& alg) {
      if (x >= alg.size()) {
        throw UsageError("element " + std::to_string(x) + " is outside the universe of size "
                         + std::to_string(alg.size()));
      }
      return static_cast<Elem>(x);
    }

    std::string tuple_text(std::vector<Elem> const& w) {
      std::string out = "(";
      for (std::size_t i = 0; i < w.size(); ++i) {
        out += (i ? "," : "") + std::to_string(w[i]);
      }
      return out + ")";
    }

    void print_table(std::ostream& out, std::string const& label, OperationTable const& t) {
      out << label << ":\n";
      auto const entries = t.entries();
      for (std::size_t i = 0; i < entries.size(); ++i) {
        out << (i % t.size() == 0 ? "  " : " ") << entries[i]
            << ((i + 1) % t.size() == 0 ? "\n" : "");
      }
    }

    json table_json(OperationTable const& t) {
      auto const entries = t.entries();
      return {{"arity", t.arity()}, {"entries", std::vector<Elem>(entries.begin(), entries.end())}};
    }

    void print_smb(std::ostream& out, SmbReport const& r) {
      out << "SMB over " << to_string(r.sim) << ": " << detail::verdict_word(r.holds) << "\n";
      for (auto const& v : r.violations) {
        out << "  " << v.rule << " fails at " << tuple_text(v.witness) << "\n";
      }
    }

    int cmd_check_smb(Options const& opt, std::ostream& out) {
      auto const alg = load(opt.file);
      auto const sim = sim_option(opt, alg);
      auto const r   = sim ? check_smb_over(alg, *sim) : detect_smb(alg);
      if (opt.json) {
        out << detail::to_json(r).dump() << "\n";
      } else {
        print_smb(out, r);
      }
      return r.holds ? exit_holds : exit_fails;
    }

    int cmd_check_regular(Options const& opt, std::ostream& out) {
      auto const alg = load(opt.file);
      auto const sim = sim_option(opt, alg);
      auto const smb = sim ? check_smb_over(alg, *sim) : detect_smb(alg);
      if (!smb.holds) {
        if (opt.json) {
          out << detail::to_json(smb).dump() << "\n";
        } else {
          print_smb(out, smb);
        }
        return exit_fails;
      }
      auto const r = check_regular(alg, smb.sim);
      if (opt.json) {
        out << detail::to_json(r, smb.sim).dump() << "\n";
      } else {
        static char const* const names[] = {"(i)", "(ii)", "(iii)", "(iv)"};
        out << "sim: " << to_string(smb.sim) << "\n";
        for (std::size_t i = 0; i < 4; ++i) {
          out << names[i] << " " << verdict_text(r.conditions[i]) << "\n";
        }
        out << "regular: " << detail::verdict_word(r.regular()) << "\n";
      }
      return r.regular() ? exit_holds : exit_fails;
    }

    int cmd_verify_base(Options const& opt, std::ostream& out) {
      auto const alg = load(opt.file);
      auto const r   = check_regular_base(alg);
      if (opt.json) {
        out << detail::to_json(r).dump() << "\n";
      } else {
        for (std::size_t i = 0; i < r.names.size(); ++i) {
          out << r.names[i] << " " << verdict_text(r.verdicts[i]) << "\n";
        }
        if (r.recovered_sim) {
          out << "sim: " << to_string(*r.recovered_sim) << "\n";
        }
      }
      return r.holds() ? exit_holds : exit_fails;
    }

    int cmd_regularize(Options const& opt, std::ostream& out) {
      auto const alg = load(opt.file);
      auto const reg = regularize(alg, sim_option(opt, alg));
      write_text(opt, print_algebra(reg), out);
      return exit_holds;
    }

    int cmd_con(Options const& opt, std::ostream& out) {
      auto const alg = load(opt.file);
      auto const con = congruence_lattice(alg);
      if (opt.json) {
        json elems = json::array();
        for (auto const& p : con.elements) {
          elems.push_back(to_string(p));
        }
        json covers = json::array();
        for (auto [i, j] : con.covers) {
          covers.push_back({i, j});
        }
        out << json{{"congruences", elems}, {"covers", covers}}.dump() << "\n";
        return exit_holds;
      }
      for (std::size_t i = 0; i < con.elements.size(); ++i) {
        out << i << ": " << to_string(con.elements[i]) << "\n";
      }
      out << "covers:";
      for (auto [i, j] : con.covers) {
        out << " " << i << "<" << j;
      }
      out << "\n";
      return exit_holds;
    }

    int cmd_cg(Options const& opt, std::ostream& out) {
      auto const alg = load(opt.file);
      auto const p   = principal_congruence(alg, element(opt.a, alg), element(opt.b, alg));
      if (opt.json) {
        out << json{{"partition", to_string(p)}}.dump() << "\n";
      } else {
        out << to_string(p) << "\n";
      }
      return exit_holds;
    }

    int cmd_commutator(Options const& opt, std::ostream& out) {
      auto const alg = load(opt.file);
      auto const p   = commutator(alg, parse_partition(opt.p1, alg.size()),
                                  parse_partition(opt.p2, alg.size()));
      if (opt.json) {
        out << json{{"partition", to_string(p)}}.dump() << "\n";
      } else {
        out << to_string(p) << "\n";
      }
      return exit_holds;
    }

    struct Tally {
      std::size_t checked = 0;
      std::size_t members = 0;
      std::size_t failures = 0;
      std::vector<std::string> messages;
    };

    Tally verify_cg_d3_all(SmbContext& ctx) {
      Tally      t;
      auto const n = ctx.algebra().size();
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = a + 1; b < n; ++b) {
          auto const r  = verify_cg_d3(ctx, a, b);
          bool       ok = r.equal;
          std::size_t longest = 0;
          for (auto const& [c, d] : r.cg.pairs()) {
            auto it = r.chains.find({c, d});
            if (it == r.chains.end()) {
              ok = false;
              continue;
            }
            longest = std::max(longest, it->second.polynomials.size());
            ok      = ok && it->second.polynomials.size() <= 6 && replays(ctx.algebra(), it->second, a, b)
                 && it->second.elements.front() == c && it->second.elements.back() == d;
          }
          ++t.checked;
          t.members += r.cg.count();
          if (!ok) {
            ++t.failures;
          }
          t.messages.push_back("Cg(" + std::to_string(a) + "," + std::to_string(b) + ") = D^3: "
                               + detail::verdict_word(ok) + " (" + std::to_string(r.cg.count())
                               + " pairs, longest chain " + std::to_string(longest) + ")");
        }
      }
      return t;
    }

    template <typename Check>
    Tally sweep(SmbContext& ctx, Check&& check) {
      Tally      t;
      auto const n = ctx.algebra().size();
      for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < n; ++b) {
          for (Elem c = 0; c < n; ++c) {
            for (Elem d = 0; d < n; ++d) {
              ++t.checked;
              t.members += check(ctx, a, b, c, d) ? 1 : 0;
            }
          }
        }
      }
      return t;
    }

    int cmd_verify(Options const& opt, std::ostream& out) {
      auto const alg = load(opt.file);
      if (opt.kind == "taylor") {
        auto const v = taylor_check(alg);
        if (opt.json) {
          json violations = json::array();
          if (!v) {
            violations.push_back(detail::violation_json("Taylor", v.counterexample.value_or(std::vector<Elem>{})));
          }
          out << json{{"check", "taylor"}, {"verdict", detail::verdict_word(v.holds)},
                      {"violations", violations}}.dump()
              << "\n";
        } else {
          out << "Taylor " << verdict_text(v) << "\n";
        }
        return v ? exit_holds : exit_fails;
      }
      SmbContext ctx(alg);
      try {
        ctx.require_regular();
      } catch (HypothesisError const& e) {
        if (opt.json) {
          out << json{{"check", opt.kind}, {"verdict", "fails"}, {"reason", e.what()}}.dump() << "\n";
        } else {
          out << opt.kind << ": fails (" << e.what() << ")\n";
        }
        return exit_fails;
      }
      Tally t;
      if (opt.kind == "cg-d3") {
        t = verify_cg_d3_all(ctx);
      } else if (opt.kind == "cgvsim") {
        t = sweep(ctx, [](SmbContext& c, Elem a, Elem b, Elem x, Elem y) {
          return check_cgvsim(c, a, b, x, y);
        });
      } else if (opt.kind == "undersim") {
        t = sweep(ctx, [](SmbContext& c, Elem a, Elem b, Elem x, Elem y) {
          return check_undersim(c, a, b, x, y);
        });
      } else {
        t = sweep(ctx, [](SmbContext& c, Elem a, Elem b, Elem x, Elem y) {
          return commutator_below_sim(c, a, b, x, y);
        });
      }
      bool const ok = t.failures == 0;
      if (opt.json) {
        out << json{{"check", opt.kind},
                    {"verdict", detail::verdict_word(ok)},
                    {"sim", to_string(ctx.sim())},
                    {"checked", t.checked},
                    {"members", t.members},
                    {"failures", t.failures}}
                   .dump()
            << "\n";
      } else {
        for (auto const& m : t.messages) {
          out << m << "\n";
        }
        out << opt.kind << ": " << detail::verdict_word(ok) << " (" << t.checked << " checked, "
            << t.members << " members, " << t.failures << " failures)\n";
      }
      return ok ? exit_holds : exit_fails;
    }

    int cmd_pipeline(Options const& opt, std::ostream& out) {
      auto const alg = load(opt.file);
      auto const r   = run_pipeline(alg, opt.symbol, sim_option(opt, alg));
      if (opt.json) {
        json j{{"circ", table_json(r.circ)},
               {"iterated", table_json(r.iterated)},
               {"circ_iterated", table_json(r.circ_iterated)},
               {"circ_special", table_json(r.circ_special)},
               {"wedge_candidate", nullptr},
               {"diagnostics", r.diagnostics}};
        if (r.wedge_candidate) {
          j["wedge_candidate"] = table_json(*r.wedge_candidate);
        }
        out << j.dump() << "\n";
        return exit_holds;
      }
      print_table(out, "circ", r.circ);
      print_table(out, "circ of w_" + std::to_string(alg.size()), r.circ_iterated);
      print_table(out, "special circ", r.circ_special);
      if (r.wedge_candidate) {
        print_table(out, "wedge candidate", *r.wedge_candidate);
      }
      for (auto const& d : r.diagnostics) {
        out << "note: " << d << "\n";
      }
      return exit_holds;
    }

    int cmd_construct(Options const& opt, std::ostream& out) {
      FiniteAlgebra alg;
      if (opt.kind == "e3") {
        alg = example_e3();
      } else if (opt.kind == "b2") {
        alg = example_b2();
      } else if (opt.kind == "s2") {
        alg = example_s2();
      } else if (opt.kind == "n4") {
        alg = example_n4();
      } else {
        if (opt.file.empty() || opt.symbol.empty()) {
          throw UsageError("construct extend needs FILE and an operation symbol");
        }
        alg = extend_simple_type5(load(opt.file), opt.symbol);
      }
      write_text(opt, print_algebra(alg), out);
      return exit_holds;
    }

    int cmd_corpus(Options const& opt, std::ostream& out) {
      CorpusSpec spec;
      spec.seed     = opt.seed;
      spec.max_size = opt.max_size;
      std::string text;
      for (auto const& alg : generate_corpus(spec)) {
        text += print_algebra(alg) + "\n";
      }
      write_text(opt, text, out);
      return exit_holds;
    }
  }  // namespace

  int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    Options  opt;
    CLI::App app{"Finite SMB algebra toolkit", "smbalg"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", opt.json, "Print JSON instead of text");

    auto* check_smb = app.add_subcommand("check-smb", "Is the algebra SMB (over --sim, or over the wedge relation)?");
    check_smb->add_option("FILE", opt.file)->required();
    check_smb->add_option("--sim", opt.sim, "Partition such as \"0 1 | 2\"");

    auto* check_reg = app.add_subcommand("check-regular", "Regularity conditions (i) to (iv)");
    check_reg->add_option("FILE", opt.file)->required();
    check_reg->add_option("--sim", opt.sim, "Partition such as \"0 1 | 2\"");

    auto* base = app.add_subcommand("verify-base", "Check the twelve identities of the regular base");
    base->add_option("FILE", opt.file)->required();

    auto* reg = app.add_subcommand("regularize", "Regularize an SMB algebra");
    reg->add_option("FILE", opt.file)->required();
    reg->add_option("-o,--output", opt.output, "Output .alg file (default stdout)");
    reg->add_option("--sim", opt.sim, "Partition such as \"0 1 | 2\"");

    auto* con = app.add_subcommand("con", "Congruence lattice");
    con->add_option("FILE", opt.file)->required();

    auto* cg = app.add_subcommand("cg", "Principal congruence Cg(a,b)");
    cg->add_option("FILE", opt.file)->required();
    cg->add_option("a", opt.a)->required();
    cg->add_option("b", opt.b)->required();

    auto* verify = app.add_subcommand("verify", "Exhaustive checks of the structure theorems");
    verify->add_option("CHECK", opt.kind)
        ->required()
        ->check(CLI::IsMember({"cg-d3", "taylor", "cgvsim", "undersim", "commutator"}));
    verify->add_option("FILE", opt.file)->required();

    auto* comm = app.add_subcommand("commutator", "Commutator of two congruences");
    comm->add_option("FILE", opt.file)->required();
    comm->add_option("P1", opt.p1)->required();
    comm->add_option("P2", opt.p2)->required();

    auto* pipe = app.add_subcommand("pipeline", "wnu term pipeline for one operation");
    pipe->add_option("FILE", opt.file)->required();
    pipe->add_option("SYMBOL", opt.symbol)->required();
    pipe->add_option("--sim", opt.sim, "Partition such as \"0 1 | 2\"");

    auto* construct = app.add_subcommand("construct", "Print a built-in or constructed algebra");
    construct->add_option("NAME", opt.kind)
        ->required()
        ->check(CLI::IsMember({"e3", "b2", "s2", "n4", "extend"}));
    construct->add_option("FILE", opt.file);
    construct->add_option("SYMBOL", opt.symbol);
    construct->add_option("-o,--output", opt.output, "Output .alg file (default stdout)");

    auto* corpus = app.add_subcommand("corpus", "Print the generated corpus");
    corpus->add_option("--seed", opt.seed, "Generator seed");
    corpus->add_option("--max-size", opt.max_size, "Largest universe")->check(CLI::Range(1, 16));
    corpus->add_option("-o,--output", opt.output, "Output .alg file (default stdout)");

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      int const code = app.exit(e, out, err);
      return code == 0 ? exit_holds : exit_usage;
    }

    try {
      if (check_smb->parsed()) {
        return cmd_check_smb(opt, out);
      }
      if (check_reg->parsed()) {
        return cmd_check_regular(opt, out);
      }
      if (base->parsed()) {
        return cmd_verify_base(opt, out);
      }
      if (reg->parsed()) {
        return cmd_regularize(opt, out);
      }
      if (con->parsed()) {
        return cmd_con(opt, out);
      }
      if (cg->parsed()) {
        return cmd_cg(opt, out);
      }
      if (verify->parsed()) {
        return cmd_verify(opt, out);
      }
      if (comm->parsed()) {
        return cmd_commutator(opt, out);
      }
      if (pipe->parsed()) {
        return cmd_pipeline(opt, out);
      }
      if (construct->parsed()) {
        return cmd_construct(opt, out);
      }
      return cmd_corpus(opt, out);
    } catch (TheoremFalsified const& e) {
      err << "internal check failed: " << e.what() << "\n";
      return exit_falsified;
    } catch (HypothesisError const& e) {
      err << "hypothesis not established: " << e.what() << "\n";
      return exit_fails;
    } catch (Error const& e) {
      err << "error: " << e.what() << "\n";
      return exit_usage;
    }
  }

}  // namespace smbalg
