#include "bmg/back_and_forth.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace bmg {

namespace {

/// Shared id space for interned types. Atomic diagrams are keyed by string,
/// composite types by the sorted set of their member ids; equal ids mean
/// structurally equal nested types.
struct Interner {
  std::map<std::string, int> atoms;
  std::map<std::vector<int>, int> sets;
  int next = 0;

  int atom(const std::string& s) {
    auto [it, fresh] = atoms.try_emplace(s, next);
    if (fresh) ++next;
    return it->second;
  }
  int set(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto [it, fresh] = sets.try_emplace(std::move(ids), next);
    if (fresh) ++next;
    return it->second;
  }
};

/// One structure prepared for fast atomic-diagram evaluation: vertices
/// densified, arity-1/2 tables flattened into arrays.
class PreparedStructure {
 public:
  explicit PreparedStructure(const FinStructure& s) : s_(s), verts_(s.vertices()) {
    const std::size_t n = verts_.size();
    std::map<Vertex, int> dense;
    for (std::size_t i = 0; i < n; ++i) dense[verts_[i]] = static_cast<int>(i);
    for (const auto& rel : s.sig().relations()) {
      if (rel.arity == 1) {
        auto& flat = unary_[rel.name];
        flat.assign(n, 0);
        for (const Tuple& t : s.table(rel.name)) flat[static_cast<std::size_t>(dense[t[0]])] = 1;
      } else if (rel.arity == 2) {
        auto& flat = binary_[rel.name];
        flat.assign(n * n, 0);
        for (const Tuple& t : s.table(rel.name)) {
          flat[static_cast<std::size_t>(dense[t[0]]) * n + static_cast<std::size_t>(dense[t[1]])] = 1;
        }
      }
    }
  }

  std::size_t size() const { return verts_.size(); }

  /// Canonical atomic diagram of the tuple of dense indices.
  std::string atomic(const std::vector<int>& tuple) const {
    std::string out;
    const std::size_t k = tuple.size();
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        out.push_back(tuple[i] == tuple[j] ? '=' : '.');
      }
    }
    const std::size_t n = verts_.size();
    for (const auto& rel : s_.sig().relations()) {
      out.push_back('|');
      if (rel.arity == 1) {
        const auto& flat = unary_.at(rel.name);
        for (std::size_t i = 0; i < k; ++i) {
          out.push_back(flat[static_cast<std::size_t>(tuple[i])] ? '1' : '0');
        }
      } else if (rel.arity == 2) {
        const auto& flat = binary_.at(rel.name);
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            out.push_back(flat[static_cast<std::size_t>(tuple[i]) * n +
                               static_cast<std::size_t>(tuple[j])]
                              ? '1'
                              : '0');
          }
        }
      } else {
        // General arity: positional assignments against the raw table.
        std::vector<int> idx(static_cast<std::size_t>(rel.arity), 0);
        auto rec = [&](auto&& self, std::size_t pos) -> void {
          if (pos == idx.size()) {
            Tuple t(idx.size());
            for (std::size_t i = 0; i < idx.size(); ++i) {
              t[i] = verts_[static_cast<std::size_t>(tuple[static_cast<std::size_t>(idx[i])])];
            }
            out.push_back(s_.has_tuple(rel.name, t) ? '1' : '0');
            return;
          }
          for (int i = 0; i < static_cast<int>(k); ++i) {
            idx[pos] = i;
            self(self, pos + 1);
          }
        };
        rec(rec, 0);
      }
    }
    return out;
  }

 private:
  const FinStructure& s_;
  std::vector<Vertex> verts_;
  std::map<std::string, std::vector<char>> unary_;
  std::map<std::string, std::vector<char>> binary_;
};

/// type_0(tuple) = interned atomic diagram;
/// type_{k+1}(tuple) = interned { type_k(tuple + v) : v in the structure }.
int extension_type(const PreparedStructure& ps, Interner& interner, std::vector<int>& tuple,
                   int depth) {
  if (depth == 0) return interner.atom(ps.atomic(tuple));
  std::vector<int> members;
  members.reserve(ps.size());
  for (int v = 0; v < static_cast<int>(ps.size()); ++v) {
    tuple.push_back(v);
    members.push_back(extension_type(ps, interner, tuple, depth - 1));
    tuple.pop_back();
  }
  return interner.set(std::move(members));
}

}  // namespace

bool back_and_forth_equiv(const FinStructure& a, const FinStructure& b, int depth) {
  if (!(a.sig() == b.sig())) return false;
  if (depth <= 0) return true;
  if (a.empty() || b.empty()) return a.empty() == b.empty();

  Interner interner;
  const PreparedStructure pa(a);
  const PreparedStructure pb(b);
  std::vector<int> tuple;
  const int ta = extension_type(pa, interner, tuple, depth);
  tuple.clear();
  const int tb = extension_type(pb, interner, tuple, depth);
  return ta == tb;
}

}  // namespace bmg
