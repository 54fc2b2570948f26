#pragma once

#include <cstddef>           // for size_t
#include <cstdint>           // for uint32_t
#include <initializer_list>  // for initializer_list
#include <map>               // for map
#include <span>              // for span
#include <string>            // for string
#include <string_view>       // for string_view
#include <vector>            // for vector

namespace smbalg {

  //! An element of a finite universe {0, ..., n-1}.
  using Elem = std::uint32_t;

  //! Symbol -> arity.
  using Signature = std::map<std::string, std::size_t, std::less<>>;

  //! Names of the two designated operations of an SMB algebra.
  inline constexpr std::string_view kWedge = "wedge";
  inline constexpr std::string_view kMalcev = "d";

  //! Largest number of entries a single table may have.
  inline constexpr std::size_t kMaxTableEntries = std::size_t(1) << 26;

  //! Returns size^arity, throwing CapExceeded past \p cap.
  std::size_t checked_power(std::size_t size,
                            std::size_t arity,
                            std::size_t cap = kMaxTableEntries);

  //! One k-ary operation on {0..n-1} stored as a flat lookup table.
  //!
  //! Index convention: row-major with the last argument varying fastest,
  //! index(x1,...,xk) = ((x1*n + x2)*n + ...)*n + xk.  Files and memory use
  //! the same convention.
  class OperationTable {
   public:
    OperationTable() = default;

    //! Validates arity >= 1, size >= 1, entry count and entry range.
    OperationTable(std::size_t arity, std::size_t size, std::vector<Elem> entries);

    //! Tabulates \p f, which is called with a std::span<Elem const> of length
    //! \p arity for every argument tuple in index order.
    template <typename Func>
    static OperationTable tabulate(std::size_t arity, std::size_t size, Func&& f) {
      std::size_t const   total = checked_power(size, arity);
      std::vector<Elem>   entries(total);
      std::vector<Elem>   args(arity, 0);
      for (std::size_t i = 0; i < total; ++i) {
        entries[i] = static_cast<Elem>(f(std::span<Elem const>(args)));
        for (std::size_t j = arity; j-- > 0;) {
          if (++args[j] < size) {
            break;
          }
          args[j] = 0;
        }
      }
      return OperationTable(arity, size, std::move(entries));
    }

    std::size_t arity() const noexcept {
      return _arity;
    }
    std::size_t size() const noexcept {
      return _size;
    }
    std::span<Elem const> entries() const noexcept {
      return _entries;
    }

    std::size_t index(std::span<Elem const> args) const;

    Elem operator()(std::span<Elem const> args) const {
      return _entries[index(args)];
    }
    Elem operator()(std::initializer_list<Elem> args) const {
      return (*this)(std::span<Elem const>(args.begin(), args.size()));
    }
    Elem at_index(std::size_t i) const noexcept {
      return _entries[i];
    }

    bool is_idempotent() const;

    bool operator==(OperationTable const&) const = default;

   private:
    std::size_t       _arity = 0;
    std::size_t       _size  = 0;
    std::vector<Elem> _entries;
  };

  //! A finite algebra: universe {0..n-1} plus named operation tables.
  //!
  //! Operations are kept in symbol order; every closure routine that iterates
  //! over operations uses that order.  Idempotence is deliberately not an
  //! invariant so that candidate algebras can be loaded and rejected.
  class FiniteAlgebra {
   public:
    using Operations = std::map<std::string, OperationTable, std::less<>>;

    FiniteAlgebra() = default;
    FiniteAlgebra(std::string name, std::size_t size, Operations ops);

    std::string const& name() const noexcept {
      return _name;
    }
    std::size_t size() const noexcept {
      return _size;
    }
    Operations const& operations() const noexcept {
      return _ops;
    }

    bool has(std::string_view symbol) const;
    //! Throws EvalError naming the symbol when absent.
    OperationTable const& op(std::string_view symbol) const;

    Signature signature() const;

    FiniteAlgebra with_operation(std::string const& symbol, OperationTable table) const;
    FiniteAlgebra renamed(std::string name) const;

    bool is_idempotent() const;

    bool operator==(FiniteAlgebra const&) const = default;

   private:
    std::string _name;
    std::size_t _size = 0;
    Operations  _ops;
  };

}  // namespace smbalg
