#pragma once
// Organized normal form and the decision procedure for type inclusion.
//
// A type normalizes to a finite set of paths:
//   path ::= atom | NF -> path | <label : path> | <label : w>
// obtained by flattening intersections, distributing intersections out of
// arrow and field codomains, and dropping w-equivalent conjuncts (arrows
// into w vanish; a field of w does not, it still asserts the field's
// presence). The empty path set denotes w.
//
// s <= t holds iff every path of nf(t) is covered by nf(s):
//   atom p        : p occurs among s's paths
//   NF r -> p     : the codomains of s's arrow paths whose domains lie
//                   above r jointly entail p
//   <a : p>       : the bodies of s's a-field paths jointly entail p
//   <a : w>       : s has some a-field path
// Atom, arrow and field paths are mutually incomparable; they only relate
// through w.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lmr/type.hpp"

namespace lmr {

struct TypePath;
using PathPtr = std::shared_ptr<const TypePath>;

// Paths are ordered and deduplicated by their canonical key, computed once
// at construction.
struct TypeNF {
    std::vector<PathPtr> paths;  // sorted by key, unique

    bool omega() const { return paths.empty(); }
};

struct PathAtom {
    std::string name;
    bool variable;
};
struct PathArrow {
    TypeNF dom;
    PathPtr cod;  // never null
};
struct PathField {
    std::string label;
    PathPtr cod;  // null encodes a field of w
};

struct TypePath {
    std::variant<PathAtom, PathArrow, PathField> v;
    std::string key;
};

namespace detail {

inline std::string nf_key(const TypeNF& nf) {
    std::string out;
    for (const auto& p : nf.paths) {
        if (!out.empty()) out += '&';
        out += p->key;
    }
    return out;
}

inline PathPtr make_atom_path(std::string name, bool variable) {
    TypePath p{PathAtom{name, variable}, (variable ? "v:" : "c:") + name};
    return std::make_shared<const TypePath>(std::move(p));
}

inline PathPtr make_arrow_path(TypeNF dom, PathPtr cod) {
    std::string key = "(" + nf_key(dom) + ">" + cod->key + ")";
    TypePath p{PathArrow{std::move(dom), std::move(cod)}, std::move(key)};
    return std::make_shared<const TypePath>(std::move(p));
}

inline PathPtr make_field_path(std::string label, PathPtr cod) {
    std::string key = "<" + label + ":" + (cod ? cod->key : "w") + ">";
    TypePath p{PathField{std::move(label), std::move(cod)}, std::move(key)};
    return std::make_shared<const TypePath>(std::move(p));
}

inline void insert_path(std::vector<PathPtr>& paths, PathPtr p) {
    auto it = std::lower_bound(paths.begin(), paths.end(), p,
                               [](const PathPtr& a, const PathPtr& b) { return a->key < b->key; });
    if (it != paths.end() && (*it)->key == p->key) return;
    paths.insert(it, std::move(p));
}

}  // namespace detail

inline TypeNF normalize_type(const Type& t) {
    TypeNF out;
    std::visit(overloaded{[&](const TOmega&) {},
                          [&](const TVar& v) { out.paths.push_back(detail::make_atom_path(v.name, true)); },
                          [&](const TConst& c) {
                              out.paths.push_back(detail::make_atom_path(c.name, false));
                          },
                          [&](const TInter& i) {
                              TypeNF l = normalize_type(i.left);
                              TypeNF r = normalize_type(i.right);
                              out = std::move(l);
                              for (auto& p : r.paths) detail::insert_path(out.paths, std::move(p));
                          },
                          [&](const TArrow& a) {
                              TypeNF cod = normalize_type(a.cod);
                              if (cod.omega()) return;  // s -> w collapses to w
                              TypeNF dom = normalize_type(a.dom);
                              for (auto& p : cod.paths)
                                  detail::insert_path(out.paths, detail::make_arrow_path(dom, p));
                          },
                          [&](const TField& f) {
                              TypeNF body = normalize_type(f.body);
                              if (body.omega()) {
                                  out.paths.push_back(detail::make_field_path(f.label, nullptr));
                                  return;
                              }
                              for (auto& p : body.paths)
                                  detail::insert_path(out.paths, detail::make_field_path(f.label, p));
                          }},
               t.node().v);
    return out;
}

namespace detail {

inline Type path_to_type(const PathPtr& p);

inline Type nf_to_type_impl(const TypeNF& nf) {
    if (nf.omega()) return Type::omega();
    Type acc = path_to_type(nf.paths[0]);
    for (std::size_t i = 1; i < nf.paths.size(); ++i) acc = Type::inter(acc, path_to_type(nf.paths[i]));
    return acc;
}

inline Type path_to_type(const PathPtr& p) {
    return std::visit(
        overloaded{[&](const PathAtom& a) { return a.variable ? Type::var(a.name) : Type::atom(a.name); },
                   [&](const PathArrow& a) {
                       return Type::arrow(nf_to_type_impl(a.dom), path_to_type(a.cod));
                   },
                   [&](const PathField& f) {
                       return Type::field(f.label, f.cod ? path_to_type(f.cod) : Type::omega());
                   }},
        p->v);
}

}  // namespace detail

inline Type nf_to_type(const TypeNF& nf) { return detail::nf_to_type_impl(nf); }

// Decision procedure for the inclusion preorder. Instances own a memo table;
// answers do not depend on it.
class Subtyper {
public:
    bool subtype(const Type& s, const Type& t) { return nf_le(normalize_type(s), normalize_type(t)); }

    bool type_eq(const Type& s, const Type& t) { return subtype(s, t) && subtype(t, s); }

    bool nf_le(const TypeNF& s, const TypeNF& t) {
        for (const auto& p : t.paths)
            if (!path_le(s, p)) return false;
        return true;
    }

    bool path_le(const TypeNF& s, const PathPtr& goal) {
        std::string key = detail::nf_key(s) + "<" + goal->key;
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool r = path_le_uncached(s, goal);
        memo_.emplace(std::move(key), r);
        return r;
    }

private:
    bool path_le_uncached(const TypeNF& s, const PathPtr& goal) {
        return std::visit(
            overloaded{
                [&](const PathAtom&) {
                    for (const auto& q : s.paths)
                        if (q->key == goal->key) return true;
                    return false;
                },
                [&](const PathArrow& g) {
                    // Arrows whose domain lies above the goal domain jointly
                    // provide their codomains.
                    TypeNF cods;
                    bool any = false;
                    for (const auto& q : s.paths) {
                        auto* qa = std::get_if<PathArrow>(&q->v);
                        if (!qa || !nf_le(g.dom, qa->dom)) continue;
                        any = true;
                        detail::insert_path(cods.paths, qa->cod);
                    }
                    return any && path_le(cods, g.cod);
                },
                [&](const PathField& g) {
                    TypeNF bodies;
                    bool any = false;
                    for (const auto& q : s.paths) {
                        auto* qf = std::get_if<PathField>(&q->v);
                        if (!qf || qf->label != g.label) continue;
                        any = true;
                        if (qf->cod) detail::insert_path(bodies.paths, qf->cod);
                    }
                    if (!any) return false;
                    if (!g.cod) return true;
                    return path_le(bodies, g.cod);
                }},
            goal->v);
    }

    std::map<std::string, bool> memo_;
};

inline bool subtype(const Type& s, const Type& t) { return Subtyper().subtype(s, t); }
inline bool type_eq(const Type& s, const Type& t) { return Subtyper().type_eq(s, t); }

}  // namespace lmr
