#pragma once
// Intersection types: type variables, ground atoms, the universal type w,
// arrows, binary intersections, and single-field record types <a : s>.
// Multi-field record types are sugar for intersections of field types.

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lmr/term.hpp"  // overloaded

namespace lmr {

struct TypeNode;

class Type {
public:
    explicit Type(std::shared_ptr<const TypeNode> node) : node_(std::move(node)) {}

    const TypeNode& node() const { return *node_; }
    const std::shared_ptr<const TypeNode>& ptr() const { return node_; }

    static Type var(std::string name);
    static Type atom(std::string name);
    static Type omega();
    static Type arrow(Type dom, Type cod);
    static Type inter(Type left, Type right);
    static Type field(std::string label, Type body);

private:
    std::shared_ptr<const TypeNode> node_;
};

struct TVar {
    std::string name;
};
struct TConst {
    std::string name;
};
struct TOmega {};
struct TArrow {
    Type dom;
    Type cod;
};
struct TInter {
    Type left;
    Type right;
};
struct TField {
    std::string label;
    Type body;
};

struct TypeNode {
    std::variant<TVar, TConst, TOmega, TArrow, TInter, TField> v;
};

inline Type Type::var(std::string name) {
    return Type(std::make_shared<TypeNode>(TypeNode{TVar{std::move(name)}}));
}
inline Type Type::atom(std::string name) {
    return Type(std::make_shared<TypeNode>(TypeNode{TConst{std::move(name)}}));
}
inline Type Type::omega() { return Type(std::make_shared<TypeNode>(TypeNode{TOmega{}})); }
inline Type Type::arrow(Type dom, Type cod) {
    return Type(std::make_shared<TypeNode>(TypeNode{TArrow{std::move(dom), std::move(cod)}}));
}
inline Type Type::inter(Type left, Type right) {
    return Type(std::make_shared<TypeNode>(TypeNode{TInter{std::move(left), std::move(right)}}));
}
inline Type Type::field(std::string label, Type body) {
    return Type(std::make_shared<TypeNode>(TypeNode{TField{std::move(label), std::move(body)}}));
}

inline Type int_type() { return Type::atom("Int"); }
inline Type unit_type() { return Type::atom("Unit"); }

// <a1 : s1> & <a2 : s2> & ..., left-nested; this is what "{a1 : s1, ...}"
// parses to.
inline Type record_type(const std::vector<std::pair<std::string, Type>>& fields) {
    if (fields.empty()) return Type::omega();
    Type acc = Type::field(fields[0].first, fields[0].second);
    for (std::size_t i = 1; i < fields.size(); ++i)
        acc = Type::inter(acc, Type::field(fields[i].first, fields[i].second));
    return acc;
}

// s * t is sugar for {fst : s, snd : t}.
inline Type product_type(Type fst, Type snd) {
    return record_type({{"fst", std::move(fst)}, {"snd", std::move(snd)}});
}

inline Type inters(const std::vector<Type>& parts) {
    if (parts.empty()) return Type::omega();
    Type acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) acc = Type::inter(acc, parts[i]);
    return acc;
}

inline Type arrows(const std::vector<Type>& doms, Type cod) {
    Type acc = std::move(cod);
    for (auto it = doms.rbegin(); it != doms.rend(); ++it) acc = Type::arrow(*it, acc);
    return acc;
}

inline bool type_struct_eq(const Type& a, const Type& b) {
    const auto& na = a.node().v;
    const auto& nb = b.node().v;
    if (na.index() != nb.index()) return false;
    return std::visit(overloaded{[&](const TVar& v) { return v.name == std::get<TVar>(nb).name; },
                                 [&](const TConst& c) { return c.name == std::get<TConst>(nb).name; },
                                 [&](const TOmega&) { return true; },
                                 [&](const TArrow& ar) {
                                     const auto& o = std::get<TArrow>(nb);
                                     return type_struct_eq(ar.dom, o.dom) && type_struct_eq(ar.cod, o.cod);
                                 },
                                 [&](const TInter& in) {
                                     const auto& o = std::get<TInter>(nb);
                                     return type_struct_eq(in.left, o.left) && type_struct_eq(in.right, o.right);
                                 },
                                 [&](const TField& f) {
                                     const auto& o = std::get<TField>(nb);
                                     return f.label == o.label && type_struct_eq(f.body, o.body);
                                 }},
                      na);
}

inline bool operator==(const Type& a, const Type& b) { return type_struct_eq(a, b); }
inline bool operator!=(const Type& a, const Type& b) { return !(a == b); }

// Structural w-equivalence: w itself, arrows into w-equivalent codomains,
// and intersections of w-equivalent parts. Field types are never w
// (<a : w> still asserts the presence of field a).
inline bool is_omega_equiv(const Type& t) {
    return std::visit(overloaded{[](const TOmega&) { return true; },
                                 [](const TArrow& a) { return is_omega_equiv(a.cod); },
                                 [](const TInter& i) {
                                     return is_omega_equiv(i.left) && is_omega_equiv(i.right);
                                 },
                                 [](const TVar&) { return false; }, [](const TConst&) { return false; },
                                 [](const TField&) { return false; }},
                      t.node().v);
}

// Flatten nested intersections into the list of conjuncts, left to right.
inline void flatten_inter(const Type& t, std::vector<Type>& out) {
    if (auto* in = std::get_if<TInter>(&t.node().v)) {
        flatten_inter(in->left, out);
        flatten_inter(in->right, out);
    } else {
        out.push_back(t);
    }
}

inline std::vector<Type> conjuncts(const Type& t) {
    std::vector<Type> out;
    flatten_inter(t, out);
    return out;
}

namespace detail {

// Precedence, loosest first: arrow < inter < product < atom.
enum TypePrintLevel { kTyArrow = 0, kTyInter = 1, kTyProd = 2, kTyAtom = 3 };

inline void print_type_rec(const Type& t, int level, std::string& out);

// A left-nested intersection of field types with pairwise-distinct labels
// prints as record sugar; the two-field fst/snd case prints as a product.
inline bool try_print_sugar(const Type& t, int level, std::string& out) {
    if (!std::holds_alternative<TInter>(t.node().v) && !std::holds_alternative<TField>(t.node().v))
        return false;
    std::vector<Type> parts;
    {
        // Accept only the left-nested inter shape, so sugar re-parses to the
        // identical tree.
        Type cur = t;
        std::vector<Type> rev;
        while (auto* in = std::get_if<TInter>(&cur.node().v)) {
            rev.push_back(in->right);
            cur = in->left;
        }
        rev.push_back(cur);
        parts.assign(rev.rbegin(), rev.rend());
    }
    std::vector<const TField*> fields;
    std::set<std::string> seen;
    for (const auto& p : parts) {
        auto* f = std::get_if<TField>(&p.node().v);
        if (!f || !seen.insert(f->label).second) return false;
        fields.push_back(f);
    }
    if (fields.size() == 2 && fields[0]->label == "fst" && fields[1]->label == "snd") {
        bool parens = kTyProd < level;
        if (parens) out += '(';
        print_type_rec(fields[0]->body, kTyAtom, out);
        out += " * ";
        print_type_rec(fields[1]->body, kTyProd, out);
        if (parens) out += ')';
        return true;
    }
    out += '{';
    bool first = true;
    for (const auto* f : fields) {
        if (!first) out += ", ";
        first = false;
        out += f->label;
        out += " : ";
        print_type_rec(f->body, kTyArrow, out);
    }
    out += '}';
    return true;
}

inline void print_type_rec(const Type& t, int level, std::string& out) {
    if (try_print_sugar(t, level, out)) return;
    auto wrap = [&](int natural, auto&& body) {
        bool parens = natural < level;
        if (parens) out += '(';
        body();
        if (parens) out += ')';
    };
    std::visit(overloaded{[&](const TVar& v) { out += v.name; },
                          [&](const TConst& c) { out += c.name; },
                          [&](const TOmega&) { out += 'w'; },
                          [&](const TArrow& a) {
                              wrap(kTyArrow, [&] {
                                  print_type_rec(a.dom, kTyInter, out);
                                  out += " -> ";
                                  print_type_rec(a.cod, kTyArrow, out);
                              });
                          },
                          [&](const TInter& i) {
                              wrap(kTyInter, [&] {
                                  print_type_rec(i.left, kTyInter, out);
                                  out += " & ";
                                  print_type_rec(i.right, kTyProd, out);
                              });
                          },
                          [&](const TField& f) {
                              out += '{';
                              out += f.label;
                              out += " : ";
                              print_type_rec(f.body, kTyArrow, out);
                              out += '}';
                          }},
               t.node().v);
}

}  // namespace detail

inline std::string print_type(const Type& t) {
    std::string out;
    detail::print_type_rec(t, detail::kTyArrow, out);
    return out;
}

struct TypeLess {
    bool operator()(const Type& a, const Type& b) const { return print_type(a) < print_type(b); }
};

}  // namespace lmr
