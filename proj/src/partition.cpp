#include "smbalg/partition.hpp"

#include <algorithm>  // for find_if
#include <cctype>     // for isdigit, isspace
#include <limits>     // for numeric_limits
#include <numeric>    // for iota

#include "smbalg/errors.hpp"

namespace smbalg {

  Partition::Partition(std::span<std::size_t const> labels) : _ids(labels.size()) {
    constexpr std::size_t         unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t>      seen_label;
    std::vector<std::size_t>      seen_id;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto it = std::find(seen_label.begin(), seen_label.end(), labels[i]);
      std::size_t id = unset;
      if (it == seen_label.end()) {
        id = seen_label.size();
        seen_label.push_back(labels[i]);
        seen_id.push_back(id);
      } else {
        id = seen_id[static_cast<std::size_t>(it - seen_label.begin())];
      }
      _ids[i] = id;
    }
    _num_classes = seen_label.size();
  }

  Partition Partition::discrete(std::size_t n) {
    std::vector<std::size_t> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    return Partition(labels);
  }

  Partition Partition::full(std::size_t n) {
    return Partition(std::vector<std::size_t>(n, 0));
  }

  Partition Partition::from_classes(std::size_t n, std::vector<std::vector<Elem>> const& classes) {
    constexpr std::size_t    unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> labels(n, unset);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (classes[c].empty()) {
        throw InvalidAlgebra("empty class in partition");
      }
      for (Elem x : classes[c]) {
        if (x >= n) {
          throw InvalidAlgebra("element " + std::to_string(x) + " outside universe of size "
                               + std::to_string(n));
        }
        if (labels[x] != unset) {
          throw InvalidAlgebra("element " + std::to_string(x) + " occurs in two classes");
        }
        labels[x] = c;
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (labels[x] == unset) {
        throw InvalidAlgebra("element " + std::to_string(x) + " is in no class");
      }
    }
    return Partition(labels);
  }

  std::vector<std::vector<Elem>> Partition::classes() const {
    std::vector<std::vector<Elem>> result(_num_classes);
    for (std::size_t x = 0; x < _ids.size(); ++x) {
      result[_ids[x]].push_back(static_cast<Elem>(x));
    }
    return result;
  }

  std::vector<Elem> Partition::representatives() const {
    std::vector<Elem> reps(_num_classes);
    for (std::size_t x = _ids.size(); x-- > 0;) {
      reps[_ids[x]] = static_cast<Elem>(x);
    }
    return reps;
  }

  bool Partition::refines(Partition const& other) const {
    if (size() != other.size()) {
      return false;
    }
    // Each of our classes must map into a single class of other.
    constexpr std::size_t    unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> image(_num_classes, unset);
    for (std::size_t x = 0; x < _ids.size(); ++x) {
      std::size_t& im = image[_ids[x]];
      if (im == unset) {
        im = other._ids[x];
      } else if (im != other._ids[x]) {
        return false;
      }
    }
    return true;
  }

  Partition join_partitions(Partition const& p, Partition const& q) {
    if (p.size() != q.size()) {
      throw InvalidAlgebra("join of partitions of different sizes");
    }
    detail::DisjointSets sets(p.size());
    // Link each element to the first element of its class in each partition.
    std::vector<std::size_t> first_p(p.num_classes(), p.size());
    std::vector<std::size_t> first_q(q.num_classes(), q.size());
    for (std::size_t x = 0; x < p.size(); ++x) {
      std::size_t& fp = first_p[p.class_of(static_cast<Elem>(x))];
      std::size_t& fq = first_q[q.class_of(static_cast<Elem>(x))];
      if (fp == p.size()) {
        fp = x;
      }
      if (fq == q.size()) {
        fq = x;
      }
      sets.unite(x, fp);
      sets.unite(x, fq);
    }
    return sets.partition();
  }

  Partition meet_partitions(Partition const& p, Partition const& q) {
    if (p.size() != q.size()) {
      throw InvalidAlgebra("meet of partitions of different sizes");
    }
    std::vector<std::size_t> labels(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) {
      labels[x] = p.class_of(static_cast<Elem>(x)) * q.num_classes()
                  + q.class_of(static_cast<Elem>(x));
    }
    return Partition(labels);
  }

  std::string to_string(Partition const& p) {
    std::string out;
    auto const  classes = p.classes();
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (c != 0) {
        out += " | ";
      }
      for (std::size_t i = 0; i < classes[c].size(); ++i) {
        if (i != 0) {
          out += ' ';
        }
        out += std::to_string(classes[c][i]);
      }
    }
    return out;
  }

  Partition parse_partition(std::string_view text, std::size_t n) {
    std::vector<std::vector<Elem>> classes(1);
    std::size_t                    i = 0;
    while (i < text.size()) {
      char const c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '|') {
        if (classes.back().empty()) {
          throw ParseError(1, i + 1, "empty class before '|'");
        }
        classes.emplace_back();
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t const start = i;
        std::size_t       value = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          value = value * 10 + static_cast<std::size_t>(text[i] - '0');
          if (value >= n) {
            break;
          }
          ++i;
        }
        if (value >= n) {
          throw ParseError(1, start + 1, "element outside universe of size " + std::to_string(n));
        }
        classes.back().push_back(static_cast<Elem>(value));
      } else {
        throw ParseError(1, i + 1, std::string("unexpected character '") + c + "'");
      }
    }
    if (classes.back().empty()) {
      throw ParseError(1, text.size() + 1, "empty class");
    }
    try {
      return Partition::from_classes(n, classes);
    } catch (InvalidAlgebra const& e) {
      throw ParseError(1, 1, e.what());
    }
  }

  namespace detail {
    DisjointSets::DisjointSets(std::size_t n) : _parent(n) {
      std::iota(_parent.begin(), _parent.end(), 0);
    }

    std::size_t DisjointSets::find(std::size_t x) {
      while (_parent[x] != x) {
        _parent[x] = _parent[_parent[x]];
        x          = _parent[x];
      }
      return x;
    }

    bool DisjointSets::unite(std::size_t x, std::size_t y) {
      x = find(x);
      y = find(y);
      if (x == y) {
        return false;
      }
      // smaller root wins so that roots are class minima
      if (y < x) {
        std::swap(x, y);
      }
      _parent[y] = x;
      return true;
    }

    Partition DisjointSets::partition() {
      std::vector<std::size_t> labels(_parent.size());
      for (std::size_t x = 0; x < labels.size(); ++x) {
        labels[x] = find(x);
      }
      return Partition(labels);
    }
  }  // namespace detail

}  // namespace smbalg
