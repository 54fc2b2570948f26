#pragma once

#include <cstddef>  // for size_t
#include <memory>   // for shared_ptr
#include <span>     // for span
#include <string>   // for string
#include <vector>   // for vector

#include "smbalg/algebra.hpp"

namespace smbalg {

  //! An immutable term over operation symbols, variables and element
  //! literals.
  //!
  //! Nodes are shared, so a Term is cheap to copy and subterms may be reused
  //! (the representation is a DAG).  A term containing element literals is a
  //! polynomial.
  class Term {
   public:
    enum class Kind { variable, constant, application };

    //! Variable number 0 so that a default Term is usable.
    Term();

    static Term var(std::size_t index);
    static Term constant(Elem value);
    static Term apply(std::string symbol, std::vector<Term> children);

    Kind kind() const noexcept;
    bool is_variable() const noexcept {
      return kind() == Kind::variable;
    }
    bool is_constant() const noexcept {
      return kind() == Kind::constant;
    }
    bool is_application() const noexcept {
      return kind() == Kind::application;
    }

    //! Only meaningful for the matching kind.
    std::size_t              var_index() const noexcept;
    Elem                     value() const noexcept;
    std::string const&       symbol() const noexcept;
    std::span<Term const>    children() const noexcept;

    //! One more than the largest variable index, 0 for a ground term.
    std::size_t num_vars() const;

    //! Flags for which variable indices below num_vars() occur.
    std::vector<bool> occurring_vars() const;

    //! Replaces variable i by replacement[i]; variables past the end stay.
    Term substitute(std::span<Term const> replacement) const;

    //! Number of distinct nodes in the DAG.
    std::size_t dag_size() const;

    //! Structural equality.
    bool operator==(Term const& other) const;

    //! Identity of the shared node, used for DAG memoisation.
    void const* node_id() const noexcept {
      return _node.get();
    }

   private:
    struct Node;
    explicit Term(std::shared_ptr<Node const> node) : _node(std::move(node)) {}
    std::shared_ptr<Node const> _node;
  };

  //! Builds f(args...) from terms.
  template <typename... Args>
  Term app(std::string symbol, Args const&... args) {
    return Term::apply(std::move(symbol), std::vector<Term>{args...});
  }

  //! Default printing name of variable \p i: x, y, z, u, v, w, x6, x7, ...
  std::string variable_name(std::size_t i);

  //! Prints with variable_name() for variables and @k for literals.
  std::string to_string(Term const& t);

  //! A term compiled against one algebra for repeated evaluation.
  //!
  //! Construction validates symbols, arities and literal range; eval() then
  //! only checks the assignment length.
  class CompiledTerm {
   public:
    CompiledTerm(FiniteAlgebra const& alg, Term const& t);

    std::size_t num_vars() const noexcept {
      return _num_vars;
    }

    Elem eval(std::span<Elem const> assignment) const;
    //! Same as eval() but reuses \p scratch between calls.
    Elem eval(std::span<Elem const> assignment, std::vector<Elem>& scratch) const;

   private:
    struct Instr {
      Term::Kind            kind;
      Elem                  value;  // variable index or literal
      OperationTable const* table;
      std::size_t           first_child;  // into _children
      std::size_t           num_children;
    };
    std::vector<Instr>       _code;
    std::vector<std::size_t> _children;
    std::size_t              _num_vars = 0;
    std::size_t              _size     = 0;
  };

  //! Value of \p t under \p assignment.
  Elem eval_term(FiniteAlgebra const& alg, Term const& t, std::span<Elem const> assignment);

  //! Table of the m-ary term operation defined by \p t.
  OperationTable materialize_term(FiniteAlgebra const& alg, Term const& t, std::size_t arity);

}  // namespace smbalg
