#include "smbalg/term.hpp"

#include <algorithm>      // for max
#include <functional>     // for function
#include <string>         // for to_string
#include <unordered_map>  // for unordered_map
#include <unordered_set>  // for unordered_set
#include <utility>        // for move

#include "smbalg/errors.hpp"

namespace smbalg {

  struct Term::Node {
    Kind              kind;
    std::size_t       index = 0;  // variable index or literal value
    std::string       symbol;
    std::vector<Term> children;
  };

  Term::Term() : Term(var(0)) {}

  Term Term::var(std::size_t index) {
    return Term(std::make_shared<Node const>(Node{Kind::variable, index, {}, {}}));
  }

  Term Term::constant(Elem value) {
    return Term(std::make_shared<Node const>(Node{Kind::constant, value, {}, {}}));
  }

  Term Term::apply(std::string symbol, std::vector<Term> children) {
    if (symbol.empty()) {
      throw EvalError("empty operation symbol in term");
    }
    return Term(std::make_shared<Node const>(
        Node{Kind::application, 0, std::move(symbol), std::move(children)}));
  }

  Term::Kind Term::kind() const noexcept {
    return _node->kind;
  }

  std::size_t Term::var_index() const noexcept {
    return _node->index;
  }

  Elem Term::value() const noexcept {
    return static_cast<Elem>(_node->index);
  }

  std::string const& Term::symbol() const noexcept {
    return _node->symbol;
  }

  std::span<Term const> Term::children() const noexcept {
    return _node->children;
  }

  namespace {
    // Visits every distinct node once, children before parents.
    void for_each_node(Term const& t, std::function<void(Term const&)> const& f) {
      std::unordered_set<void const*> seen;
      std::function<void(Term const&)> go = [&](Term const& s) {
        if (!seen.insert(s.node_id()).second) {
          return;
        }
        for (Term const& c : s.children()) {
          go(c);
        }
        f(s);
      };
      go(t);
    }
  }  // namespace

  std::size_t Term::num_vars() const {
    std::size_t n = 0;
    for_each_node(*this, [&n](Term const& s) {
      if (s.is_variable()) {
        n = std::max(n, s.var_index() + 1);
      }
    });
    return n;
  }

  std::vector<bool> Term::occurring_vars() const {
    std::vector<bool> result(num_vars(), false);
    for_each_node(*this, [&result](Term const& s) {
      if (s.is_variable()) {
        result[s.var_index()] = true;
      }
    });
    return result;
  }

  std::size_t Term::dag_size() const {
    std::size_t n = 0;
    for_each_node(*this, [&n](Term const&) { ++n; });
    return n;
  }

  Term Term::substitute(std::span<Term const> replacement) const {
    std::unordered_map<void const*, Term> memo;
    std::function<Term(Term const&)>      go = [&](Term const& s) -> Term {
      auto it = memo.find(s.node_id());
      if (it != memo.end()) {
        return it->second;
      }
      Term result = s;
      if (s.is_variable() && s.var_index() < replacement.size()) {
        result = replacement[s.var_index()];
      } else if (s.is_application()) {
        std::vector<Term> kids;
        kids.reserve(s.children().size());
        for (Term const& c : s.children()) {
          kids.push_back(go(c));
        }
        result = Term::apply(s.symbol(), std::move(kids));
      }
      memo.emplace(s.node_id(), result);
      return result;
    };
    return go(*this);
  }

  bool Term::operator==(Term const& other) const {
    if (_node == other._node) {
      return true;
    }
    if (kind() != other.kind()) {
      return false;
    }
    switch (kind()) {
      case Kind::variable:
      case Kind::constant:
        return _node->index == other._node->index;
      case Kind::application:
        break;
    }
    if (symbol() != other.symbol() || children().size() != other.children().size()) {
      return false;
    }
    for (std::size_t i = 0; i < children().size(); ++i) {
      if (!(children()[i] == other.children()[i])) {
        return false;
      }
    }
    return true;
  }

  std::string variable_name(std::size_t i) {
    static char const* const names[] = {"x", "y", "z", "u", "v", "w"};
    if (i < 6) {
      return names[i];
    }
    return "x" + std::to_string(i);
  }

  std::string to_string(Term const& t) {
    switch (t.kind()) {
      case Term::Kind::variable:
        return variable_name(t.var_index());
      case Term::Kind::constant:
        return "@" + std::to_string(t.value());
      case Term::Kind::application:
        break;
    }
    std::string out = t.symbol() + "(";
    for (std::size_t i = 0; i < t.children().size(); ++i) {
      if (i != 0) {
        out += ",";
      }
      out += to_string(t.children()[i]);
    }
    return out + ")";
  }

  CompiledTerm::CompiledTerm(FiniteAlgebra const& alg, Term const& t)
      : _size(alg.size()) {
    std::unordered_map<void const*, std::size_t> slot;
    std::function<std::size_t(Term const&)>      go = [&](Term const& s) -> std::size_t {
      auto it = slot.find(s.node_id());
      if (it != slot.end()) {
        return it->second;
      }
      Instr ins{s.kind(), 0, nullptr, 0, 0};
      switch (s.kind()) {
        case Term::Kind::variable:
          ins.value  = static_cast<Elem>(s.var_index());
          _num_vars  = std::max(_num_vars, s.var_index() + 1);
          break;
        case Term::Kind::constant:
          if (s.value() >= alg.size()) {
            throw EvalError("element literal @" + std::to_string(s.value())
                            + " outside universe of size " + std::to_string(alg.size()));
          }
          ins.value = s.value();
          break;
        case Term::Kind::application: {
          OperationTable const& table = alg.op(s.symbol());
          if (table.arity() != s.children().size()) {
            throw EvalError("operation '" + s.symbol() + "' has arity "
                            + std::to_string(table.arity()) + " but is applied to "
                            + std::to_string(s.children().size()) + " arguments");
          }
          std::vector<std::size_t> kids;
          for (Term const& c : s.children()) {
            kids.push_back(go(c));
          }
          ins.table        = &table;
          ins.first_child  = _children.size();
          ins.num_children = kids.size();
          _children.insert(_children.end(), kids.begin(), kids.end());
          break;
        }
      }
      _code.push_back(ins);
      std::size_t const k = _code.size() - 1;
      slot.emplace(s.node_id(), k);
      return k;
    };
    go(t);
  }

  Elem CompiledTerm::eval(std::span<Elem const> assignment) const {
    std::vector<Elem> scratch;
    return eval(assignment, scratch);
  }

  Elem CompiledTerm::eval(std::span<Elem const> assignment,
                          std::vector<Elem>&    scratch) const {
    if (assignment.size() < _num_vars) {
      throw EvalError("assignment has length " + std::to_string(assignment.size())
                      + " but the term uses variable index "
                      + std::to_string(_num_vars - 1));
    }
    scratch.resize(_code.size());
    for (std::size_t k = 0; k < _code.size(); ++k) {
      Instr const& ins = _code[k];
      switch (ins.kind) {
        case Term::Kind::variable: {
          Elem const a = assignment[ins.value];
          if (a >= _size) {
            throw EvalError("assignment value " + std::to_string(a)
                            + " outside universe of size " + std::to_string(_size));
          }
          scratch[k] = a;
          break;
        }
        case Term::Kind::constant:
          scratch[k] = ins.value;
          break;
        case Term::Kind::application: {
          std::size_t idx = 0;
          for (std::size_t j = 0; j < ins.num_children; ++j) {
            idx = idx * _size + scratch[_children[ins.first_child + j]];
          }
          scratch[k] = ins.table->at_index(idx);
          break;
        }
      }
    }
    return scratch.back();
  }

  Elem eval_term(FiniteAlgebra const& alg, Term const& t, std::span<Elem const> assignment) {
    return CompiledTerm(alg, t).eval(assignment);
  }

  OperationTable materialize_term(FiniteAlgebra const& alg, Term const& t, std::size_t arity) {
    CompiledTerm const compiled(alg, t);
    if (compiled.num_vars() > arity) {
      throw EvalError("term uses variable index " + std::to_string(compiled.num_vars() - 1)
                      + " but the requested arity is " + std::to_string(arity));
    }
    std::vector<Elem> scratch;
    return OperationTable::tabulate(arity, alg.size(), [&](std::span<Elem const> args) {
      return compiled.eval(args, scratch);
    });
  }

}  // namespace smbalg
