#pragma once
// Bounded brute-force typing oracle: the set of types assignable to a term
// when every type appearing in the derivation is drawn from a finite
// universe (all types of bounded depth over given atoms and labels). An
// under-approximation of derivability, closed under the universe-restricted
// rules; inclusion side conditions use the full decider.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmr/check.hpp"

namespace lmr {

struct UniverseLimitError : std::runtime_error {
    explicit UniverseLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }

    // Returns true when any new bit appeared.
    bool or_with(const Bitset& o) {
        bool changed = false;
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t merged = w_[i] | o.w_[i];
            changed |= merged != w_[i];
            w_[i] = merged;
        }
        return changed;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    friend bool operator==(const Bitset& a, const Bitset& b) { return a.n_ == b.n_ && a.w_ == b.w_; }
    friend bool operator!=(const Bitset& a, const Bitset& b) { return !(a == b); }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct TypeUniverse {
    std::vector<Type> types;  // generation order; index 0 is w
    std::map<std::string, int> index;

    struct ArrowInfo {
        int self, dom, cod;
    };
    struct FieldInfo {
        int self;
        std::string label;
        int body;
    };
    struct InterInfo {
        int self, left, right;
    };

    std::vector<ArrowInfo> arrows;
    std::vector<FieldInfo> fields;
    std::vector<InterInfo> inters;

    int find(const Type& t) const {
        auto it = index.find(print_type(t));
        return it == index.end() ? -1 : it->second;
    }
};

// All types of the given depth over the atoms and labels: depth-1 types are
// w and the atoms; each further level closes under arrow, intersection and
// single-field construction.
inline TypeUniverse build_type_universe(const std::vector<std::string>& atoms,
                                        const std::vector<std::string>& labels, int depth,
                                        std::size_t cap = 4000) {
    TypeUniverse u;
    auto add = [&](const Type& t) {
        std::string key = print_type(t);
        if (u.index.count(key)) return;
        if (u.types.size() >= cap)
            throw UniverseLimitError("type universe exceeds the configured cap of " +
                                     std::to_string(cap));
        u.index.emplace(std::move(key), static_cast<int>(u.types.size()));
        u.types.push_back(t);
    };
    add(Type::omega());
    for (const auto& a : atoms) add(Type::atom(a));

    std::size_t prev_begin = 0;
    for (int level = 2; level <= depth; ++level) {
        std::size_t end = u.types.size();
        for (std::size_t i = 0; i < end; ++i) {
            for (std::size_t j = 0; j < end; ++j) {
                // Only combinations involving the previous level are new.
                if (level > 2 && i < prev_begin && j < prev_begin) continue;
                add(Type::arrow(u.types[i], u.types[j]));
                add(Type::inter(u.types[i], u.types[j]));
            }
            if (level == 2 || i >= prev_begin)
                for (const auto& l : labels) add(Type::field(l, u.types[i]));
        }
        prev_begin = end;
    }
    for (std::size_t i = 0; i < u.types.size(); ++i) {
        std::visit(overloaded{[&](const TArrow& a) {
                                  u.arrows.push_back(
                                      {static_cast<int>(i), u.find(a.dom), u.find(a.cod)});
                              },
                              [&](const TInter& in) {
                                  u.inters.push_back(
                                      {static_cast<int>(i), u.find(in.left), u.find(in.right)});
                              },
                              [&](const TField& f) {
                                  u.fields.push_back({static_cast<int>(i), f.label, u.find(f.body)});
                              },
                              [&](const auto&) {}},
                   u.types[i].node().v);
    }
    return u;
}

namespace detail {

inline void collect_term_labels(const Term& t, std::set<std::string>& out) {
    std::visit(overloaded{[&](const Lam& l) { collect_term_labels(l.body, out); },
                          [&](const App& a) {
                              collect_term_labels(a.fn, out);
                              collect_term_labels(a.arg, out);
                          },
                          [&](const Rec& r) {
                              for (const auto& e : r.record.entries()) {
                                  out.insert(e.label);
                                  collect_term_labels(e.value, out);
                              }
                          },
                          [&](const Sel& s) {
                              out.insert(s.label);
                              collect_term_labels(s.subject, out);
                          },
                          [&](const Merge& m) {
                              collect_term_labels(m.left, out);
                              for (const auto& e : m.right.entries()) {
                                  out.insert(e.label);
                                  collect_term_labels(e.value, out);
                              }
                          },
                          [&](const auto&) {}},
               t.node().v);
}

inline void collect_type_labels(const Type& t, std::set<std::string>& out) {
    std::visit(overloaded{[&](const TArrow& a) {
                              collect_type_labels(a.dom, out);
                              collect_type_labels(a.cod, out);
                          },
                          [&](const TInter& i) {
                              collect_type_labels(i.left, out);
                              collect_type_labels(i.right, out);
                          },
                          [&](const TField& f) {
                              out.insert(f.label);
                              collect_type_labels(f.body, out);
                          },
                          [&](const auto&) {}},
               t.node().v);
}

}  // namespace detail

class EnumOracle {
public:
    explicit EnumOracle(TypeUniverse universe) : u_(std::move(universe)), up_(u_.types.size()) {
        for (const auto& a : u_.arrows) arrows_by_dom_[a.dom].push_back(a);
    }

    const TypeUniverse& universe() const { return u_; }

    Bitset types_of(const Context& ctx, const Term& t) {
        std::string key = term_key(ctx, t);
        if (auto it = term_memo_.find(key); it != term_memo_.end()) return it->second;
        Bitset r = compute(ctx, t);
        close(r);
        term_memo_.emplace(std::move(key), r);
        return r;
    }

    std::vector<Type> types_of_list(const Context& ctx, const Term& t) {
        Bitset bits = types_of(ctx, t);
        std::vector<Type> out;
        for (std::size_t i = 0; i < u_.types.size(); ++i)
            if (bits.get(i)) out.push_back(u_.types[i]);
        return out;
    }

private:
    Bitset compute(const Context& ctx, const Term& t) {
        Bitset r(u_.types.size());
        std::visit(
            overloaded{
                [&](const Var& v) {
                    const Type* bound = ctx.lookup(v.name);
                    if (bound) r = seed_row(*bound);
                },
                [&](const IntLit&) { r = seed_row(int_type()); },
                [&](const UnitLit&) { r = seed_row(unit_type()); },
                [&](const PrimPlus&) {
                    r = seed_row(Type::arrow(int_type(), Type::arrow(int_type(), int_type())));
                },
                [&](const Lam& l) {
                    for (const auto& [dom, arrows] : arrows_by_dom_) {
                        Bitset body = types_of(ctx.extend(l.binder, u_.types[dom]), l.body);
                        for (const auto& a : arrows)
                            if (body.get(a.cod)) r.set(a.self);
                    }
                },
                [&](const App& a) {
                    Bitset fn = types_of(ctx, a.fn);
                    Bitset arg = types_of(ctx, a.arg);
                    for (const auto& ar : u_.arrows)
                        if (fn.get(ar.self) && arg.get(ar.dom)) r.set(ar.cod);
                },
                [&](const Rec& rec) {
                    std::map<std::string, Bitset> field_rows;
                    for (const auto& e : rec.record.entries())
                        field_rows.emplace(e.label, types_of(ctx, e.value));
                    for (const auto& f : u_.fields) {
                        auto it = field_rows.find(f.label);
                        if (it != field_rows.end() && it->second.get(f.body)) r.set(f.self);
                    }
                },
                [&](const Sel& s) {
                    Bitset subj = types_of(ctx, s.subject);
                    for (const auto& f : u_.fields)
                        if (f.label == s.label && subj.get(f.self)) r.set(f.body);
                },
                [&](const Merge& m) {
                    Bitset left = types_of(ctx, m.left);
                    Bitset right = types_of(ctx, Term::record(m.right));
                    for (const auto& f : u_.fields) {
                        if (m.right.has_label(f.label)) {
                            if (right.get(f.self)) r.set(f.self);
                        } else if (left.get(f.self)) {
                            r.set(f.self);
                        }
                    }
                }},
            t.node().v);
        return r;
    }

    // Upward closure by Sub, the w axiom, and intersection introduction.
    void close(Bitset& s) {
        s.set(0);  // w
        Bitset processed(u_.types.size());
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < u_.types.size(); ++i) {
                if (!s.get(i) || processed.get(i)) continue;
                processed.set(i);
                changed |= s.or_with(up_row(i));
            }
            for (const auto& in : u_.inters) {
                if (!s.get(in.self) && s.get(in.left) && s.get(in.right)) {
                    s.set(in.self);
                    changed = true;
                }
            }
        }
    }

    const Bitset& up_row(std::size_t i) {
        if (!up_[i]) {
            Bitset row(u_.types.size());
            for (std::size_t j = 0; j < u_.types.size(); ++j)
                if (sub_.subtype(u_.types[i], u_.types[j])) row.set(j);
            up_[i] = std::move(row);
        }
        return *up_[i];
    }

    // {j : seed <= u[j]}, for seeds that may live outside the universe.
    Bitset seed_row(const Type& seed) {
        std::string key = print_type(seed);
        if (auto it = seed_memo_.find(key); it != seed_memo_.end()) return it->second;
        int idx = u_.find(seed);
        Bitset row(u_.types.size());
        if (idx >= 0) {
            row = up_row(static_cast<std::size_t>(idx));
        } else {
            for (std::size_t j = 0; j < u_.types.size(); ++j)
                if (sub_.subtype(seed, u_.types[j])) row.set(j);
        }
        seed_memo_.emplace(std::move(key), row);
        return row;
    }

    std::string term_key(const Context& ctx, const Term& t) {
        std::string key;
        for (const auto& v : free_vars(t))
            if (const Type* ty = ctx.lookup(v)) key += v + ":" + print_type(*ty) + ",";
        key += "|" + print_term(t);
        return key;
    }

    TypeUniverse u_;
    std::vector<std::optional<Bitset>> up_;
    std::map<int, std::vector<TypeUniverse::ArrowInfo>> arrows_by_dom_;
    std::map<std::string, Bitset> seed_memo_;
    std::map<std::string, Bitset> term_memo_;
    Subtyper sub_;
};

// The types assignable to t inside the depth-bounded universe over the given
// atoms and the labels occurring in the term and context.
inline std::vector<Type> enumerate_types(const Context& ctx, const Term& t,
                                         const std::vector<std::string>& atoms, int depth,
                                         std::size_t cap = 4000) {
    std::set<std::string> labels;
    detail::collect_term_labels(t, labels);
    for (const auto& [name, ty] : ctx.bindings()) detail::collect_type_labels(ty, labels);
    std::vector<std::string> label_list(labels.begin(), labels.end());
    EnumOracle oracle(build_type_universe(atoms, label_list, depth, cap));
    return oracle.types_of_list(ctx, t);
}

}  // namespace lmr
