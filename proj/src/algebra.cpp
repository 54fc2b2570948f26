#include "smbalg/algebra.hpp"

#include <string>   // for to_string
#include <utility>  // for move

#include "smbalg/errors.hpp"

namespace smbalg {

  std::size_t checked_power(std::size_t size, std::size_t arity, std::size_t cap) {
    std::size_t result = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      if (size != 0 && result > cap / size) {
        throw CapExceeded("cap exceeded: " + std::to_string(size) + "^"
                          + std::to_string(arity) + " exceeds "
                          + std::to_string(cap));
      }
      result *= size;
    }
    if (result > cap) {
      throw CapExceeded("cap exceeded: " + std::to_string(size) + "^"
                        + std::to_string(arity) + " exceeds "
                        + std::to_string(cap));
    }
    return result;
  }

  OperationTable::OperationTable(std::size_t       arity,
                                 std::size_t       size,
                                 std::vector<Elem> entries)
      : _arity(arity), _size(size), _entries(std::move(entries)) {
    if (arity == 0) {
      throw InvalidAlgebra("operation arity must be at least 1");
    }
    if (size == 0) {
      throw InvalidAlgebra("universe size must be at least 1");
    }
    std::size_t const expected = checked_power(size, arity);
    if (_entries.size() != expected) {
      throw InvalidAlgebra("expected " + std::to_string(expected)
                           + " entries, got "
                           + std::to_string(_entries.size()));
    }
    for (std::size_t i = 0; i < _entries.size(); ++i) {
      if (_entries[i] >= size) {
        throw InvalidAlgebra("entry " + std::to_string(i) + " is "
                             + std::to_string(_entries[i])
                             + ", outside 0.." + std::to_string(size - 1));
      }
    }
  }

  std::size_t OperationTable::index(std::span<Elem const> args) const {
    if (args.size() != _arity) {
      throw EvalError("operation of arity " + std::to_string(_arity)
                      + " applied to " + std::to_string(args.size())
                      + " arguments");
    }
    std::size_t i = 0;
    for (Elem a : args) {
      if (a >= _size) {
        throw EvalError("argument " + std::to_string(a) + " outside universe of size "
                        + std::to_string(_size));
      }
      i = i * _size + a;
    }
    return i;
  }

  bool OperationTable::is_idempotent() const {
    // The diagonal tuple (x,...,x) sits at x * (1 + n + ... + n^(k-1)).
    std::size_t stride = 0;
    for (std::size_t j = 0, p = 1; j < _arity; ++j, p *= _size) {
      stride += p;
    }
    for (std::size_t x = 0; x < _size; ++x) {
      if (_entries[x * stride] != x) {
        return false;
      }
    }
    return true;
  }

  FiniteAlgebra::FiniteAlgebra(std::string name, std::size_t size, Operations ops)
      : _name(std::move(name)), _size(size), _ops(std::move(ops)) {
    if (size == 0) {
      throw InvalidAlgebra("universe size must be at least 1");
    }
    for (auto const& [symbol, table] : _ops) {
      if (symbol.empty()) {
        throw InvalidAlgebra("empty operation symbol");
      }
      if (table.size() != size) {
        throw InvalidAlgebra("operation '" + symbol + "' is defined on a universe of size "
                             + std::to_string(table.size()) + ", expected "
                             + std::to_string(size));
      }
    }
  }

  bool FiniteAlgebra::has(std::string_view symbol) const {
    return _ops.find(symbol) != _ops.end();
  }

  OperationTable const& FiniteAlgebra::op(std::string_view symbol) const {
    auto it = _ops.find(symbol);
    if (it == _ops.end()) {
      throw EvalError("unknown operation symbol '" + std::string(symbol) + "'");
    }
    return it->second;
  }

  Signature FiniteAlgebra::signature() const {
    Signature sig;
    for (auto const& [symbol, table] : _ops) {
      sig.emplace(symbol, table.arity());
    }
    return sig;
  }

  FiniteAlgebra FiniteAlgebra::with_operation(std::string const& symbol,
                                              OperationTable     table) const {
    Operations ops = _ops;
    ops.insert_or_assign(symbol, std::move(table));
    return FiniteAlgebra(_name, _size, std::move(ops));
  }

  FiniteAlgebra FiniteAlgebra::renamed(std::string name) const {
    FiniteAlgebra copy = *this;
    copy._name         = std::move(name);
    return copy;
  }

  bool FiniteAlgebra::is_idempotent() const {
    for (auto const& [symbol, table] : _ops) {
      if (!table.is_idempotent()) {
        return false;
      }
    }
    return true;
  }

}  // namespace smbalg
