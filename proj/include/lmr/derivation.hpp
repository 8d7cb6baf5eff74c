#pragma once
// Explicit typing derivations and their verifier.
//
// Rules: Ax, ArrI, ArrE, Omega, IntI, Sub, Sel, Rec, MergeL, MergeR for the
// assignment system, plus the literal axioms Lit (integer/unit literals) and
// PlusTy (the addition constant). Verification is local and syntactic:
// premise types must match the conclusion exactly; inclusion steps are
// explicit Sub nodes checked by the subtype decider.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lmr/parse.hpp"
#include "lmr/subtype.hpp"
#include "lmr/term.hpp"
#include "lmr/type.hpp"

namespace lmr {

class Context {
public:
    Context() = default;
    explicit Context(std::map<std::string, Type> bindings) : bindings_(std::move(bindings)) {}

    const Type* lookup(const std::string& name) const {
        auto it = bindings_.find(name);
        return it == bindings_.end() ? nullptr : &it->second;
    }

    Context extend(const std::string& name, const Type& ty) const {
        Context out = *this;
        out.bindings_.insert_or_assign(name, ty);
        return out;
    }

    const std::map<std::string, Type>& bindings() const { return bindings_; }

    bool covers(const Term& t) const {
        for (const auto& v : free_vars(t))
            if (!lookup(v)) return false;
        return true;
    }

private:
    std::map<std::string, Type> bindings_;
};

struct Judgment {
    Context ctx;
    Term subject;
    Type ty;
};

inline std::string print_judgment(const Judgment& j) {
    std::string out;
    bool first = true;
    for (const auto& [name, ty] : j.ctx.bindings()) {
        if (!first) out += ", ";
        first = false;
        out += name + " : " + print_type(ty);
    }
    if (!out.empty()) out += ' ';
    out += "|- " + print_term(j.subject) + " : " + print_type(j.ty);
    return out;
}

enum class Rule { Ax, ArrI, ArrE, Omega, IntI, Sub, Sel, Rec, MergeL, MergeR, Lit, PlusTy };

inline const char* rule_name(Rule r) {
    switch (r) {
        case Rule::Ax: return "Ax";
        case Rule::ArrI: return "ArrI";
        case Rule::ArrE: return "ArrE";
        case Rule::Omega: return "Omega";
        case Rule::IntI: return "IntI";
        case Rule::Sub: return "Sub";
        case Rule::Sel: return "Sel";
        case Rule::Rec: return "Rec";
        case Rule::MergeL: return "MergeL";
        case Rule::MergeR: return "MergeR";
        case Rule::Lit: return "Lit";
        case Rule::PlusTy: return "PlusTy";
    }
    return "?";
}

inline std::optional<Rule> rule_from_name(const std::string& s) {
    static const std::map<std::string, Rule> table = {
        {"Ax", Rule::Ax},         {"ArrI", Rule::ArrI},   {"ArrE", Rule::ArrE},
        {"Omega", Rule::Omega},   {"IntI", Rule::IntI},   {"Sub", Rule::Sub},
        {"Sel", Rule::Sel},       {"Rec", Rule::Rec},     {"MergeL", Rule::MergeL},
        {"MergeR", Rule::MergeR}, {"Lit", Rule::Lit},     {"PlusTy", Rule::PlusTy}};
    auto it = table.find(s);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

struct Derivation {
    Rule rule;
    Judgment conclusion;
    std::vector<Derivation> premises;
    nlohmann::json data = nlohmann::json::object();  // optional rule-specific extras
};

struct VerifyError : std::runtime_error {
    VerifyError(const std::string& node_path, Rule rule, const std::string& reason)
        : std::runtime_error("verification failed at " + node_path + " [" + rule_name(rule) +
                             "]: " + reason),
          path(node_path) {}

    std::string path;
};

namespace detail {

inline void verify_node(const Derivation& d, Subtyper& sub, const std::string& path) {
    auto fail = [&](const std::string& reason) -> void { throw VerifyError(path, d.rule, reason); };
    auto need_premises = [&](std::size_t n) {
        if (d.premises.size() != n)
            fail("expected " + std::to_string(n) + " premises, found " +
                 std::to_string(d.premises.size()));
    };
    const Judgment& c = d.conclusion;
    if (!c.ctx.covers(c.subject)) fail("free variables of the subject escape the context");

    for (std::size_t i = 0; i < d.premises.size(); ++i)
        verify_node(d.premises[i], sub, path + "/" + std::to_string(i));

    switch (d.rule) {
        case Rule::Ax: {
            need_premises(0);
            auto* v = std::get_if<Var>(&c.subject.node().v);
            if (!v) fail("subject is not a variable");
            const Type* bound = c.ctx.lookup(v->name);
            if (!bound) fail("variable not bound in the context");
            if (*bound != c.ty) fail("context binding differs from the conclusion type");
            break;
        }
        case Rule::ArrI: {
            need_premises(1);
            auto* l = std::get_if<Lam>(&c.subject.node().v);
            if (!l) fail("subject is not an abstraction");
            auto* ar = std::get_if<TArrow>(&c.ty.node().v);
            if (!ar) fail("conclusion type is not an arrow");
            const Judgment& p = d.premises[0].conclusion;
            if (p.subject != l->body) fail("premise subject is not the body");
            if (p.ty != ar->cod) fail("premise type is not the arrow codomain");
            Context expect = c.ctx.extend(l->binder, ar->dom);
            if (p.ctx.bindings() != expect.bindings())
                fail("premise context is not the conclusion context extended with the binder");
            break;
        }
        case Rule::ArrE: {
            need_premises(2);
            auto* a = std::get_if<App>(&c.subject.node().v);
            if (!a) fail("subject is not an application");
            const Judgment& pf = d.premises[0].conclusion;
            const Judgment& pa = d.premises[1].conclusion;
            if (pf.ctx.bindings() != c.ctx.bindings() || pa.ctx.bindings() != c.ctx.bindings())
                fail("premise contexts differ from the conclusion context");
            if (pf.subject != a->fn || pa.subject != a->arg) fail("premise subjects do not match");
            auto* ar = std::get_if<TArrow>(&pf.ty.node().v);
            if (!ar) fail("function premise is not an arrow");
            if (ar->dom != pa.ty) fail("argument type differs from the arrow domain");
            if (ar->cod != c.ty) fail("conclusion type differs from the arrow codomain");
            break;
        }
        case Rule::Omega: {
            need_premises(0);
            if (!std::holds_alternative<TOmega>(c.ty.node().v)) fail("conclusion type is not w");
            break;
        }
        case Rule::IntI: {
            need_premises(2);
            auto* in = std::get_if<TInter>(&c.ty.node().v);
            if (!in) fail("conclusion type is not an intersection");
            const Judgment& pl = d.premises[0].conclusion;
            const Judgment& pr = d.premises[1].conclusion;
            if (pl.ctx.bindings() != c.ctx.bindings() || pr.ctx.bindings() != c.ctx.bindings())
                fail("premise contexts differ from the conclusion context");
            if (pl.subject != c.subject || pr.subject != c.subject)
                fail("premise subjects differ from the conclusion subject");
            if (pl.ty != in->left || pr.ty != in->right)
                fail("premise types are not the two conjuncts");
            break;
        }
        case Rule::Sub: {
            need_premises(1);
            const Judgment& p = d.premises[0].conclusion;
            if (p.ctx.bindings() != c.ctx.bindings()) fail("premise context differs");
            if (p.subject != c.subject) fail("premise subject differs");
            if (!sub.subtype(p.ty, c.ty)) fail("premise type is not included in the conclusion type");
            break;
        }
        case Rule::Sel: {
            need_premises(1);
            auto* s = std::get_if<Sel>(&c.subject.node().v);
            if (!s) fail("subject is not a selection");
            const Judgment& p = d.premises[0].conclusion;
            if (p.ctx.bindings() != c.ctx.bindings()) fail("premise context differs");
            if (p.subject != s->subject) fail("premise subject is not the selection subject");
            auto* f = std::get_if<TField>(&p.ty.node().v);
            if (!f) fail("premise type is not a field type");
            if (f->label != s->label) fail("premise field label differs from the selected label");
            if (f->body != c.ty) fail("conclusion type differs from the field body");
            break;
        }
        case Rule::Rec: {
            need_premises(1);
            auto* r = std::get_if<Rec>(&c.subject.node().v);
            if (!r) fail("subject is not a record literal");
            auto* f = std::get_if<TField>(&c.ty.node().v);
            if (!f) fail("conclusion type is not a field type");
            const Term* member = r->record.find(f->label);
            if (!member) fail("record has no field '" + f->label + "'");
            const Judgment& p = d.premises[0].conclusion;
            if (p.ctx.bindings() != c.ctx.bindings()) fail("premise context differs");
            if (p.subject != *member) fail("premise subject is not the field value");
            if (p.ty != f->body) fail("premise type differs from the field body");
            break;
        }
        case Rule::MergeL: {
            need_premises(1);
            auto* m = std::get_if<Merge>(&c.subject.node().v);
            if (!m) fail("subject is not a merge");
            auto* f = std::get_if<TField>(&c.ty.node().v);
            if (!f) fail("conclusion type is not a field type");
            if (m->right.has_label(f->label))
                fail("side condition violated: label '" + f->label +
                     "' occurs in the right record");
            const Judgment& p = d.premises[0].conclusion;
            if (p.ctx.bindings() != c.ctx.bindings()) fail("premise context differs");
            if (p.subject != m->left) fail("premise subject is not the left operand");
            if (p.ty != c.ty) fail("premise type differs from the conclusion type");
            break;
        }
        case Rule::MergeR: {
            need_premises(1);
            auto* m = std::get_if<Merge>(&c.subject.node().v);
            if (!m) fail("subject is not a merge");
            if (!std::holds_alternative<TField>(c.ty.node().v))
                fail("conclusion type is not a field type");
            const Judgment& p = d.premises[0].conclusion;
            if (p.ctx.bindings() != c.ctx.bindings()) fail("premise context differs");
            auto* pr = std::get_if<Rec>(&p.subject.node().v);
            if (!pr || !struct_eq_record(pr->record, m->right))
                fail("premise subject is not the right record");
            if (p.ty != c.ty) fail("premise type differs from the conclusion type");
            break;
        }
        case Rule::Lit: {
            need_premises(0);
            if (std::holds_alternative<IntLit>(c.subject.node().v)) {
                if (c.ty != int_type()) fail("integer literals have type Int");
            } else if (std::holds_alternative<UnitLit>(c.subject.node().v)) {
                if (c.ty != unit_type()) fail("the unit literal has type Unit");
            } else {
                fail("subject is not a literal");
            }
            break;
        }
        case Rule::PlusTy: {
            need_premises(0);
            if (!std::holds_alternative<PrimPlus>(c.subject.node().v))
                fail("subject is not the addition constant");
            Type expect = Type::arrow(int_type(), Type::arrow(int_type(), int_type()));
            if (c.ty != expect) fail("the addition constant has type Int -> Int -> Int");
            break;
        }
    }
}

}  // namespace detail

// Check every node; returns the root judgment or throws VerifyError naming
// the offending node.
inline Judgment verify(const Derivation& d) {
    Subtyper sub;
    detail::verify_node(d, sub, "");
    return d.conclusion;
}

// ---- JSON serialization ----
// {"rule": "...", "term": "...", "type": "...", "ctx": {"x": "..."},
//  "data": {...}, "premises": [...]}

inline nlohmann::json to_json(const Derivation& d) {
    nlohmann::json j;
    j["rule"] = rule_name(d.rule);
    j["term"] = print_term(d.conclusion.subject);
    j["type"] = print_type(d.conclusion.ty);
    nlohmann::json ctx = nlohmann::json::object();
    for (const auto& [name, ty] : d.conclusion.ctx.bindings()) ctx[name] = print_type(ty);
    j["ctx"] = ctx;
    if (!d.data.empty()) j["data"] = d.data;
    nlohmann::json prem = nlohmann::json::array();
    for (const auto& p : d.premises) prem.push_back(to_json(p));
    j["premises"] = prem;
    return j;
}

inline Derivation derivation_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("derivation node must be a JSON object");
    auto rule = rule_from_name(j.at("rule").get<std::string>());
    if (!rule) throw std::invalid_argument("unknown rule: " + j.at("rule").get<std::string>());
    std::map<std::string, Type> bindings;
    if (j.contains("ctx"))
        for (const auto& [name, ty] : j.at("ctx").items())
            bindings.insert_or_assign(name, parse_type(ty.get<std::string>()));
    Derivation d{*rule,
                 Judgment{Context(std::move(bindings)), parse_term(j.at("term").get<std::string>()),
                          parse_type(j.at("type").get<std::string>())},
                 {},
                 j.contains("data") ? j.at("data") : nlohmann::json::object()};
    if (j.contains("premises"))
        for (const auto& p : j.at("premises")) d.premises.push_back(derivation_from_json(p));
    return d;
}

}  // namespace lmr
