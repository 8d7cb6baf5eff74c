#pragma once
// Terms of a lambda-calculus with records and a right-biased merge operator.
//
// Two syntactic classes: ordinary terms and record literals. The right
// operand of a merge "M ++ R" is a RecordLit by construction, never a
// general term, so ill-formed merges like "{a = 1} ++ x" are
// unrepresentable. Record labels are pairwise distinct, enforced at
// construction. All values are immutable after construction and safe to
// share across threads.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lmr {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct TermNode;

class Term {
public:
    explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}

    const TermNode& node() const { return *node_; }
    const std::shared_ptr<const TermNode>& ptr() const { return node_; }

    static Term var(std::string name);
    static Term lam(std::string binder, Term body);
    static Term app(Term fn, Term arg);
    static Term record(class RecordLit rec);
    static Term sel(Term subject, std::string label);
    static Term merge(Term left, class RecordLit right);
    static Term integer(std::int64_t value);
    static Term unit();
    static Term plus();

private:
    std::shared_ptr<const TermNode> node_;
};

struct RecordEntry {
    std::string label;
    Term value;
};

// Ordered list of labeled fields with pairwise-distinct labels. Entry order
// is preserved for printing but carries no meaning.
class RecordLit {
public:
    explicit RecordLit(std::vector<RecordEntry> entries) : entries_(std::move(entries)) {
        std::set<std::string_view> seen;
        for (const auto& e : entries_) {
            if (!seen.insert(e.label).second)
                throw std::invalid_argument("duplicate record label: " + e.label);
        }
    }

    const std::vector<RecordEntry>& entries() const { return entries_; }

    const Term* find(std::string_view label) const {
        for (const auto& e : entries_)
            if (e.label == label) return &e.value;
        return nullptr;
    }

    bool has_label(std::string_view label) const { return find(label) != nullptr; }

    std::set<std::string> labels() const {
        std::set<std::string> out;
        for (const auto& e : entries_) out.insert(e.label);
        return out;
    }

private:
    std::vector<RecordEntry> entries_;
};

struct Var {
    std::string name;
};
struct Lam {
    std::string binder;
    Term body;
};
struct App {
    Term fn;
    Term arg;
};
struct Rec {
    RecordLit record;
};
struct Sel {
    Term subject;
    std::string label;
};
struct Merge {
    Term left;
    RecordLit right;
};
struct IntLit {
    std::int64_t value;
};
struct UnitLit {};
struct PrimPlus {};

struct TermNode {
    std::variant<Var, Lam, App, Rec, Sel, Merge, IntLit, UnitLit, PrimPlus> v;
};

inline Term Term::var(std::string name) {
    return Term(std::make_shared<TermNode>(TermNode{Var{std::move(name)}}));
}
inline Term Term::lam(std::string binder, Term body) {
    return Term(std::make_shared<TermNode>(TermNode{Lam{std::move(binder), std::move(body)}}));
}
inline Term Term::app(Term fn, Term arg) {
    return Term(std::make_shared<TermNode>(TermNode{App{std::move(fn), std::move(arg)}}));
}
inline Term Term::record(RecordLit rec) {
    return Term(std::make_shared<TermNode>(TermNode{Rec{std::move(rec)}}));
}
inline Term Term::sel(Term subject, std::string label) {
    return Term(std::make_shared<TermNode>(TermNode{Sel{std::move(subject), std::move(label)}}));
}
inline Term Term::merge(Term left, RecordLit right) {
    return Term(std::make_shared<TermNode>(TermNode{Merge{std::move(left), std::move(right)}}));
}
inline Term Term::integer(std::int64_t value) {
    return Term(std::make_shared<TermNode>(TermNode{IntLit{value}}));
}
inline Term Term::unit() {
    return Term(std::make_shared<TermNode>(TermNode{UnitLit{}}));
}
inline Term Term::plus() {
    return Term(std::make_shared<TermNode>(TermNode{PrimPlus{}}));
}

// Convenience builders.
inline RecordLit make_record(std::vector<RecordEntry> entries) { return RecordLit(std::move(entries)); }

inline Term apps(Term fn, const std::vector<Term>& args) {
    Term t = std::move(fn);
    for (const auto& a : args) t = Term::app(t, a);
    return t;
}

inline Term plus_of(Term a, Term b) { return Term::app(Term::app(Term::plus(), std::move(a)), std::move(b)); }

namespace detail {

inline void free_vars_into(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
    std::visit(overloaded{
                   [&](const Var& v) {
                       if (!bound.count(v.name)) out.insert(v.name);
                   },
                   [&](const Lam& l) {
                       bool fresh = bound.insert(l.binder).second;
                       free_vars_into(l.body, bound, out);
                       if (fresh) bound.erase(l.binder);
                   },
                   [&](const App& a) {
                       free_vars_into(a.fn, bound, out);
                       free_vars_into(a.arg, bound, out);
                   },
                   [&](const Rec& r) {
                       for (const auto& e : r.record.entries()) free_vars_into(e.value, bound, out);
                   },
                   [&](const Sel& s) { free_vars_into(s.subject, bound, out); },
                   [&](const Merge& m) {
                       free_vars_into(m.left, bound, out);
                       for (const auto& e : m.right.entries()) free_vars_into(e.value, bound, out);
                   },
                   [](const IntLit&) {}, [](const UnitLit&) {}, [](const PrimPlus&) {}},
               t.node().v);
}

}  // namespace detail

inline std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> bound, out;
    detail::free_vars_into(t, bound, out);
    return out;
}

inline std::set<std::string> labels(const RecordLit& r) { return r.labels(); }

// Smallest prime-decorated variant of `base` not contained in `avoid`.
inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    std::string cand = base;
    while (avoid.count(cand)) cand += '\'';
    return cand;
}

namespace detail {

inline Term subst_rec(const Term& t, const std::string& var, const Term& repl,
                      const std::set<std::string>& repl_fv);

inline RecordLit subst_record(const RecordLit& r, const std::string& var, const Term& repl,
                              const std::set<std::string>& repl_fv) {
    std::vector<RecordEntry> out;
    out.reserve(r.entries().size());
    for (const auto& e : r.entries()) out.push_back({e.label, subst_rec(e.value, var, repl, repl_fv)});
    return RecordLit(std::move(out));
}

inline Term subst_rec(const Term& t, const std::string& var, const Term& repl,
                      const std::set<std::string>& repl_fv) {
    return std::visit(
        overloaded{
            [&](const Var& v) { return v.name == var ? repl : t; },
            [&](const Lam& l) {
                if (l.binder == var) return t;
                if (repl_fv.count(l.binder) && free_vars(l.body).count(var)) {
                    // Binder would capture a free variable of the replacement.
                    std::set<std::string> avoid = repl_fv;
                    auto body_fv = free_vars(l.body);
                    avoid.insert(body_fv.begin(), body_fv.end());
                    avoid.insert(var);
                    std::string fresh = fresh_name(l.binder, avoid);
                    Term renamed = subst_rec(l.body, l.binder, Term::var(fresh), {fresh});
                    return Term::lam(fresh, subst_rec(renamed, var, repl, repl_fv));
                }
                return Term::lam(l.binder, subst_rec(l.body, var, repl, repl_fv));
            },
            [&](const App& a) {
                return Term::app(subst_rec(a.fn, var, repl, repl_fv), subst_rec(a.arg, var, repl, repl_fv));
            },
            [&](const Rec& r) { return Term::record(subst_record(r.record, var, repl, repl_fv)); },
            [&](const Sel& s) { return Term::sel(subst_rec(s.subject, var, repl, repl_fv), s.label); },
            [&](const Merge& m) {
                return Term::merge(subst_rec(m.left, var, repl, repl_fv), subst_record(m.right, var, repl, repl_fv));
            },
            [&](const IntLit&) { return t; }, [&](const UnitLit&) { return t; },
            [&](const PrimPlus&) { return t; }},
        t.node().v);
}

}  // namespace detail

// Capture-avoiding substitution body[replacement/var].
inline Term subst(const Term& body, const std::string& var, const Term& replacement) {
    return detail::subst_rec(body, var, replacement, free_vars(replacement));
}

namespace detail {

// Environments map binders to matching de-Bruijn-style levels.
inline bool alpha_eq_rec(const Term& a, const Term& b, std::map<std::string, int>& ea,
                         std::map<std::string, int>& eb, int& level) {
    const auto& na = a.node().v;
    const auto& nb = b.node().v;
    if (na.index() != nb.index()) return false;
    return std::visit(
        overloaded{
            [&](const Var& va) {
                const auto& vb = std::get<Var>(nb);
                auto ia = ea.find(va.name);
                auto ib = eb.find(vb.name);
                if (ia == ea.end() && ib == eb.end()) return va.name == vb.name;
                return ia != ea.end() && ib != eb.end() && ia->second == ib->second;
            },
            [&](const Lam& la) {
                const auto& lb = std::get<Lam>(nb);
                auto olda = ea.find(la.binder) != ea.end() ? std::optional<int>(ea[la.binder]) : std::nullopt;
                auto oldb = eb.find(lb.binder) != eb.end() ? std::optional<int>(eb[lb.binder]) : std::nullopt;
                ea[la.binder] = level;
                eb[lb.binder] = level;
                ++level;
                bool ok = alpha_eq_rec(la.body, lb.body, ea, eb, level);
                --level;
                if (olda) ea[la.binder] = *olda; else ea.erase(la.binder);
                if (oldb) eb[lb.binder] = *oldb; else eb.erase(lb.binder);
                return ok;
            },
            [&](const App& pa) {
                const auto& pb = std::get<App>(nb);
                return alpha_eq_rec(pa.fn, pb.fn, ea, eb, level) && alpha_eq_rec(pa.arg, pb.arg, ea, eb, level);
            },
            [&](const Rec& ra) {
                const auto& rb = std::get<Rec>(nb);
                if (ra.record.entries().size() != rb.record.entries().size()) return false;
                // Entry order is irrelevant; match fields by label.
                for (const auto& e : ra.record.entries()) {
                    const Term* other = rb.record.find(e.label);
                    if (!other || !alpha_eq_rec(e.value, *other, ea, eb, level)) return false;
                }
                return true;
            },
            [&](const Sel& sa) {
                const auto& sb = std::get<Sel>(nb);
                return sa.label == sb.label && alpha_eq_rec(sa.subject, sb.subject, ea, eb, level);
            },
            [&](const Merge& ma) {
                const auto& mb = std::get<Merge>(nb);
                if (!alpha_eq_rec(ma.left, mb.left, ea, eb, level)) return false;
                if (ma.right.entries().size() != mb.right.entries().size()) return false;
                for (const auto& e : ma.right.entries()) {
                    const Term* other = mb.right.find(e.label);
                    if (!other || !alpha_eq_rec(e.value, *other, ea, eb, level)) return false;
                }
                return true;
            },
            [&](const IntLit& ia) { return ia.value == std::get<IntLit>(nb).value; },
            [&](const UnitLit&) { return true; }, [&](const PrimPlus&) { return true; }},
        na);
}

}  // namespace detail

// Identity up to consistent renaming of bound variables; record entry order
// is ignored.
inline bool alpha_eq(const Term& a, const Term& b) {
    std::map<std::string, int> ea, eb;
    int level = 0;
    return detail::alpha_eq_rec(a, b, ea, eb, level);
}

inline bool struct_eq(const Term& a, const Term& b);

inline bool struct_eq_record(const RecordLit& a, const RecordLit& b) {
    if (a.entries().size() != b.entries().size()) return false;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        if (a.entries()[i].label != b.entries()[i].label) return false;
        if (!struct_eq(a.entries()[i].value, b.entries()[i].value)) return false;
    }
    return true;
}

inline bool struct_eq(const Term& a, const Term& b) {
    const auto& na = a.node().v;
    const auto& nb = b.node().v;
    if (na.index() != nb.index()) return false;
    return std::visit(
        overloaded{[&](const Var& v) { return v.name == std::get<Var>(nb).name; },
                   [&](const Lam& l) {
                       const auto& o = std::get<Lam>(nb);
                       return l.binder == o.binder && struct_eq(l.body, o.body);
                   },
                   [&](const App& p) {
                       const auto& o = std::get<App>(nb);
                       return struct_eq(p.fn, o.fn) && struct_eq(p.arg, o.arg);
                   },
                   [&](const Rec& r) { return struct_eq_record(r.record, std::get<Rec>(nb).record); },
                   [&](const Sel& s) {
                       const auto& o = std::get<Sel>(nb);
                       return s.label == o.label && struct_eq(s.subject, o.subject);
                   },
                   [&](const Merge& m) {
                       const auto& o = std::get<Merge>(nb);
                       return struct_eq(m.left, o.left) && struct_eq_record(m.right, o.right);
                   },
                   [&](const IntLit& i) { return i.value == std::get<IntLit>(nb).value; },
                   [&](const UnitLit&) { return true; }, [&](const PrimPlus&) { return true; }},
        na);
}

inline bool operator==(const Term& a, const Term& b) { return struct_eq(a, b); }
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }

namespace detail {

// Printer precedence, loosest first: lambda body < merge < sum < application < atom.
enum PrintLevel { kLevTerm = 0, kLevMerge = 1, kLevSum = 2, kLevApp = 3, kLevAtom = 4 };

inline void print_term_rec(const Term& t, int level, std::string& out);

inline void print_record(const RecordLit& r, std::string& out) {
    out += '{';
    bool first = true;
    for (const auto& e : r.entries()) {
        if (!first) out += ", ";
        first = false;
        out += e.label;
        out += " = ";
        print_term_rec(e.value, kLevTerm, out);
    }
    out += '}';
}

inline void print_term_rec(const Term& t, int level, std::string& out) {
    auto wrap = [&](int natural, auto&& body) {
        bool parens = natural < level;
        if (parens) out += '(';
        body();
        if (parens) out += ')';
    };
    std::visit(
        overloaded{
            [&](const Var& v) { out += v.name; },
            [&](const IntLit& i) { out += std::to_string(i.value); },
            [&](const UnitLit&) { out += "()"; },
            [&](const PrimPlus&) { out += "(+)"; },
            [&](const Rec& r) { print_record(r.record, out); },
            [&](const Lam& l) {
                wrap(kLevTerm, [&] {
                    out += '\\';
                    out += l.binder;
                    out += ". ";
                    print_term_rec(l.body, kLevTerm, out);
                });
            },
            [&](const App& a) {
                // Fully applied addition prints infix.
                if (auto* inner = std::get_if<App>(&a.fn.node().v);
                    inner && std::holds_alternative<PrimPlus>(inner->fn.node().v)) {
                    wrap(kLevSum, [&] {
                        print_term_rec(inner->arg, kLevSum, out);
                        out += " + ";
                        print_term_rec(a.arg, kLevApp, out);
                    });
                    return;
                }
                wrap(kLevApp, [&] {
                    print_term_rec(a.fn, kLevApp, out);
                    out += ' ';
                    print_term_rec(a.arg, kLevAtom, out);
                });
            },
            [&](const Sel& s) {
                wrap(kLevAtom, [&] {
                    print_term_rec(s.subject, kLevAtom, out);
                    out += '.';
                    out += s.label;
                });
            },
            [&](const Merge& m) {
                wrap(kLevMerge, [&] {
                    print_term_rec(m.left, kLevMerge, out);
                    out += " ++ ";
                    print_record(m.right, out);
                });
            }},
        t.node().v);
}

}  // namespace detail

// Concrete-syntax rendering; output re-parses to an alpha-equal term.
inline std::string print_term(const Term& t) {
    std::string out;
    detail::print_term_rec(t, detail::kLevTerm, out);
    return out;
}

inline std::string print_record_lit(const RecordLit& r) {
    std::string out;
    detail::print_record(r, out);
    return out;
}

// let x = M in N  ~>  (\x. N) M. Recursive bindings are rejected.
inline Term let_term(const std::string& name, const Term& bound, const Term& body) {
    if (free_vars(bound).count(name))
        throw std::invalid_argument("recursive let binding of '" + name + "'");
    return Term::app(Term::lam(name, body), bound);
}

// let (x, y) = M in N  ~>  (\p. (\x. \y. N) p.fst p.snd) M with p fresh.
inline Term let_pair_term(const std::string& x, const std::string& y, const Term& bound, const Term& body) {
    if (free_vars(bound).count(x) || free_vars(bound).count(y))
        throw std::invalid_argument("recursive let binding in pair pattern");
    std::set<std::string> avoid = free_vars(bound);
    auto bfv = free_vars(body);
    avoid.insert(bfv.begin(), bfv.end());
    avoid.insert(x);
    avoid.insert(y);
    std::string p = fresh_name("p", avoid);
    Term inner = Term::app(Term::app(Term::lam(x, Term::lam(y, body)), Term::sel(Term::var(p), "fst")),
                           Term::sel(Term::var(p), "snd"));
    return Term::app(Term::lam(p, inner), bound);
}

}  // namespace lmr
