#include "smbalg/text.hpp"

#include <algorithm>  // for find
#include <cctype>     // for isalnum, isdigit, isspace
#include <charconv>   // for from_chars
#include <sstream>    // for ostringstream

#include "smbalg/errors.hpp"

namespace smbalg {

  namespace {
    bool ident_start(char c) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    bool ident_char(char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    // Recursive descent over one line of text.
    class TermParser {
     public:
      TermParser(std::string_view text, std::size_t line, std::size_t column0,
                 VariableScope& scope, Signature const* sig)
          : _text(text), _line(line), _col0(column0), _scope(scope), _sig(sig) {}

      [[noreturn]] void fail(std::string const& reason) const {
        throw ParseError(_line, _col0 + _pos, reason);
      }

      void skip_ws() {
        while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos]))) {
          ++_pos;
        }
      }

      bool at_end() {
        skip_ws();
        return _pos >= _text.size();
      }

      bool peek(std::string_view s) {
        skip_ws();
        return _text.substr(_pos, s.size()) == s;
      }

      void expect(std::string_view s) {
        if (!peek(s)) {
          fail("expected '" + std::string(s) + "'");
        }
        _pos += s.size();
      }

      Term term() {
        skip_ws();
        if (_pos >= _text.size()) {
          fail("expected a term");
        }
        char const c = _text[_pos];
        if (c == '@') {
          ++_pos;
          std::size_t const start = _pos;
          while (_pos < _text.size() && std::isdigit(static_cast<unsigned char>(_text[_pos]))) {
            ++_pos;
          }
          if (start == _pos) {
            fail("expected digits after '@'");
          }
          Elem value = 0;
          auto [p, ec] = std::from_chars(_text.data() + start, _text.data() + _pos, value);
          if (ec != std::errc()) {
            _pos = start;
            fail("element literal out of range");
          }
          return Term::constant(value);
        }
        if (!ident_start(c)) {
          fail(std::string("unexpected character '") + c + "'");
        }
        std::size_t const start = _pos;
        while (_pos < _text.size() && ident_char(_text[_pos])) {
          ++_pos;
        }
        std::string const name(_text.substr(start, _pos - start));
        skip_ws();
        if (_pos < _text.size() && _text[_pos] == '(') {
          ++_pos;
          std::vector<Term> args;
          if (!peek(")")) {
            args.push_back(term());
            while (peek(",")) {
              ++_pos;
              args.push_back(term());
            }
          }
          expect(")");
          if (_sig != nullptr) {
            auto it = _sig->find(name);
            if (it == _sig->end()) {
              _pos = start;
              fail("unknown operation symbol '" + name + "'");
            }
            if (it->second != args.size()) {
              _pos = start;
              fail("operation '" + name + "' has arity " + std::to_string(it->second)
                   + " but is applied to " + std::to_string(args.size()) + " arguments");
            }
          }
          if (args.empty()) {
            _pos = start;
            fail("operation '" + name + "' applied to no arguments");
          }
          return Term::apply(name, std::move(args));
        }
        if (_sig != nullptr && _sig->find(name) != _sig->end()) {
          _pos = start;
          fail("operation symbol '" + name + "' used as a variable");
        }
        return Term::var(_scope.bind(name));
      }

      Identity identity() {
        Term lhs = term();
        expect("=");
        Term rhs = term();
        return {std::move(lhs), std::move(rhs)};
      }

      std::size_t pos() const noexcept {
        return _pos;
      }

     private:
      std::string_view _text;
      std::size_t      _line;
      std::size_t      _col0;
      std::size_t      _pos = 0;
      VariableScope&   _scope;
      Signature const* _sig;
    };

    struct Line {
      std::size_t      number;
      std::string_view text;  // comment stripped
    };

    std::vector<Line> split_lines(std::string_view text) {
      std::vector<Line> lines;
      std::size_t       number = 1;
      while (true) {
        std::size_t const eol  = text.find('\n');
        std::string_view  line = text.substr(0, eol);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
          line = line.substr(0, hash);
        }
        if (!line.empty() && line.back() == '\r') {
          line.remove_suffix(1);
        }
        lines.push_back({number++, line});
        if (eol == std::string_view::npos) {
          break;
        }
        text.remove_prefix(eol + 1);
      }
      return lines;
    }

    struct Word {
      std::string_view text;
      std::size_t      column;  // 1-based
    };

    std::vector<Word> words(std::string_view line) {
      std::vector<Word> out;
      std::size_t       i = 0;
      while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
          ++i;
        }
        std::size_t const start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
          ++i;
        }
        if (i > start) {
          out.push_back({line.substr(start, i - start), start + 1});
        }
      }
      return out;
    }

    std::size_t parse_count(Word const& w, std::size_t line, char const* what) {
      std::size_t value = 0;
      auto [p, ec] = std::from_chars(w.text.data(), w.text.data() + w.text.size(), value);
      if (ec != std::errc() || p != w.text.data() + w.text.size()) {
        throw ParseError(line, w.column, std::string("expected ") + what + ", got '"
                                             + std::string(w.text) + "'");
      }
      return value;
    }

    bool is_keyword(std::string_view w) {
      return w == "algebra" || w == "size" || w == "op" || w == "derive";
    }

    class AlgebraBuilder {
     public:
      AlgebraBuilder(std::string name, std::size_t line) : _name(std::move(name)), _line(line) {}

      void size(std::size_t n, std::size_t line, std::size_t column) {
        if (_size) {
          throw ParseError(line, column, "size given twice");
        }
        if (n == 0) {
          throw ParseError(line, column, "size must be positive");
        }
        _size = n;
      }

      void begin_op(std::string sym, std::size_t arity, std::size_t line, std::size_t column) {
        finish_op();
        check_new_symbol(sym, line, column);
        if (arity == 0) {
          throw ParseError(line, column, "operation arity must be at least 1");
        }
        std::size_t total = 0;
        try {
          total = checked_power(*_size, arity);
        } catch (CapExceeded const& e) {
          throw ParseError(line, column, e.what());
        }
        _pending = Pending{std::move(sym), arity, total, line, column, {}};
        _pending->entries.reserve(total);
      }

      bool wants_entries() const {
        return _pending && _pending->entries.size() < _pending->total;
      }

      void entry(Word const& w, std::size_t line) {
        std::size_t const v = parse_count(w, line, "a table entry");
        if (v >= *_size) {
          throw ParseError(line, w.column, "entry " + std::to_string(v)
                                               + " is outside the universe of size "
                                               + std::to_string(*_size));
        }
        _pending->entries.push_back(static_cast<Elem>(v));
      }

      void derive(std::string sym, std::size_t arity, std::string_view term_text,
                  std::size_t line, std::size_t column, std::size_t term_column) {
        finish_op();
        check_new_symbol(sym, line, column);
        FiniteAlgebra const so_far = build_partial();
        Signature const     sig    = so_far.signature();
        VariableScope       scope;
        TermParser          parser(term_text, line, term_column, scope, &sig);
        Term const          t = parser.term();
        if (!parser.at_end()) {
          parser.fail("unexpected text after the term");
        }
        if (scope.names().size() > arity) {
          throw ParseError(line, term_column, "term uses " + std::to_string(scope.names().size())
                                                  + " variables but the arity is "
                                                  + std::to_string(arity));
        }
        try {
          _ops.emplace(std::move(sym), materialize_term(so_far, t, arity));
        } catch (Error const& e) {
          throw ParseError(line, term_column, e.what());
        }
      }

      void require_size(std::size_t line, std::size_t column) const {
        if (!_size) {
          throw ParseError(line, column, "size must be declared before operations");
        }
      }

      FiniteAlgebra finish(std::size_t line, std::size_t column) {
        if (wants_entries()) {
          throw ParseError(line, column, "operation '" + _pending->symbol + "': expected "
                                             + std::to_string(_pending->total) + " entries, got "
                                             + std::to_string(_pending->entries.size()));
        }
        if (!_size) {
          throw ParseError(_line, 1, "algebra '" + _name + "' has no size");
        }
        finish_op();
        return build_partial();
      }

     private:
      struct Pending {
        std::string       symbol;
        std::size_t       arity;
        std::size_t       total;
        std::size_t       line;
        std::size_t       column;
        std::vector<Elem> entries;
      };

      void check_new_symbol(std::string const& sym, std::size_t line, std::size_t column) {
        if (_ops.count(sym) != 0 || (_pending && _pending->symbol == sym)) {
          throw ParseError(line, column, "duplicate operation symbol '" + sym + "'");
        }
      }

      void finish_op() {
        if (_pending) {
          _ops.emplace(_pending->symbol,
                       OperationTable(_pending->arity, *_size, std::move(_pending->entries)));
          _pending.reset();
        }
      }

      FiniteAlgebra build_partial() const {
        return FiniteAlgebra(_name, *_size, _ops);
      }

      std::string                _name;
      std::size_t                _line;
      std::optional<std::size_t> _size;
      FiniteAlgebra::Operations  _ops;
      std::optional<Pending>     _pending;
    };

    std::string rest_after(std::string_view line, Word const& w) {
      std::size_t const start = w.column - 1 + w.text.size();
      std::string_view  rest  = line.substr(start);
      while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) {
        rest.remove_prefix(1);
      }
      while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) {
        rest.remove_suffix(1);
      }
      return std::string(rest);
    }
  }  // namespace

  std::vector<FiniteAlgebra> parse_algebras(std::string_view text) {
    std::vector<FiniteAlgebra>    out;
    std::optional<AlgebraBuilder> current;
    std::size_t                   last_line = 1;
    for (auto const& [number, line] : split_lines(text)) {
      last_line = number;
      auto const ws = words(line);
      if (ws.empty()) {
        continue;
      }
      if (current && current->wants_entries() && !is_keyword(ws[0].text)) {
        for (auto const& w : ws) {
          if (!current->wants_entries()) {
            throw ParseError(number, w.column, "more table entries than expected");
          }
          current->entry(w, number);
        }
        continue;
      }
      auto const& kw = ws[0];
      if (kw.text == "algebra") {
        if (current) {
          out.push_back(current->finish(number, kw.column));
        }
        std::string name = rest_after(line, kw);
        if (name.empty()) {
          throw ParseError(number, kw.column + kw.text.size(), "expected an algebra name");
        }
        current.emplace(std::move(name), number);
        continue;
      }
      if (!current) {
        throw ParseError(number, kw.column, "expected 'algebra NAME' first");
      }
      if (current->wants_entries()) {
        // a keyword while entries are still missing
        current->finish(number, kw.column);
      }
      if (kw.text == "size") {
        if (ws.size() != 2) {
          throw ParseError(number, kw.column, "expected 'size N'");
        }
        current->size(parse_count(ws[1], number, "a size"), number, ws[1].column);
      } else if (kw.text == "op") {
        if (ws.size() < 3) {
          throw ParseError(number, kw.column, "expected 'op SYMBOL ARITY'");
        }
        current->require_size(number, kw.column);
        current->begin_op(std::string(ws[1].text), parse_count(ws[2], number, "an arity"),
                          number, ws[1].column);
        for (std::size_t i = 3; i < ws.size(); ++i) {
          if (!current->wants_entries()) {
            throw ParseError(number, ws[i].column, "more table entries than expected");
          }
          current->entry(ws[i], number);
        }
      } else if (kw.text == "derive") {
        // derive SYMBOL ARITY = TERM
        if (ws.size() < 4 || ws[3].text.substr(0, 1) != "=") {
          throw ParseError(number, kw.column, "expected 'derive SYMBOL ARITY = TERM'");
        }
        current->require_size(number, kw.column);
        std::size_t const eq = line.find('=', ws[2].column - 1 + ws[2].text.size());
        current->derive(std::string(ws[1].text), parse_count(ws[2], number, "an arity"),
                        line.substr(eq + 1), number, ws[1].column, eq + 2);
      } else {
        throw ParseError(number, kw.column, "unknown keyword '" + std::string(kw.text) + "'");
      }
    }
    if (current) {
      out.push_back(current->finish(last_line, 1));
    }
    return out;
  }

  FiniteAlgebra parse_algebra(std::string_view text) {
    auto algs = parse_algebras(text);
    if (algs.size() != 1) {
      throw ParseError(1, 1, "expected exactly one algebra, found " + std::to_string(algs.size()));
    }
    return std::move(algs.front());
  }

  std::string print_algebra(FiniteAlgebra const& alg) {
    std::ostringstream out;
    out << "algebra " << alg.name() << "\n";
    out << "size " << alg.size() << "\n";
    for (auto const& [sym, f] : alg.operations()) {
      out << "op " << sym << " " << f.arity() << "\n";
      auto const        entries = f.entries();
      std::size_t const row     = alg.size();
      for (std::size_t i = 0; i < entries.size(); ++i) {
        out << entries[i] << ((i + 1) % row == 0 ? "\n" : " ");
      }
    }
    return out.str();
  }

  std::size_t VariableScope::bind(std::string_view name) {
    auto it = std::find(_names.begin(), _names.end(), name);
    if (it != _names.end()) {
      return static_cast<std::size_t>(it - _names.begin());
    }
    _names.emplace_back(name);
    return _names.size() - 1;
  }

  Term parse_term(std::string_view text, VariableScope& scope, Signature const* signature) {
    TermParser p(text, 1, 1, scope, signature);
    Term       t = p.term();
    if (!p.at_end()) {
      p.fail("unexpected text after the term");
    }
    return t;
  }

  Term parse_term(std::string_view text, Signature const* signature) {
    VariableScope scope;
    return parse_term(text, scope, signature);
  }

  Identity parse_identity(std::string_view text, Signature const* signature) {
    VariableScope scope;
    TermParser    p(text, 1, 1, scope, signature);
    Identity      id = p.identity();
    if (!p.at_end()) {
      p.fail("unexpected text after the identity");
    }
    return id;
  }

  Quasiidentity parse_quasiidentity(std::string_view text, Signature const* signature) {
    VariableScope scope;
    TermParser    p(text, 1, 1, scope, signature);
    Quasiidentity q;
    Identity      first = p.identity();
    if (p.at_end()) {
      q.conclusion = std::move(first);
      return q;
    }
    q.premises.push_back(std::move(first));
    while (p.peek("&")) {
      p.expect("&");
      q.premises.push_back(p.identity());
    }
    p.expect("->");
    q.conclusion = p.identity();
    if (!p.at_end()) {
      p.fail("unexpected text after the quasi-identity");
    }
    return q;
  }

  std::string print_term(Term const& t, std::vector<std::string> const& names) {
    switch (t.kind()) {
      case Term::Kind::variable:
        return t.var_index() < names.size() ? names[t.var_index()] : variable_name(t.var_index());
      case Term::Kind::constant:
        return "@" + std::to_string(t.value());
      case Term::Kind::application: {
        std::string out = t.symbol() + "(";
        auto const  cs  = t.children();
        for (std::size_t i = 0; i < cs.size(); ++i) {
          out += (i ? "," : "") + print_term(cs[i], names);
        }
        return out + ")";
      }
    }
    return {};
  }

}  // namespace smbalg
