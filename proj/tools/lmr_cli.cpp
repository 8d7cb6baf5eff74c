// Command-line front end: evaluation, subtype queries, derivation checking
// and verification, bounded type enumeration, and the built-in demos.
//
// Exit codes: 0 success, 1 semantic negative (subtype false, derivation not
// found, evaluation out of fuel, a failing demo), 2 usage or input errors.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lmr/lmr.hpp"

namespace {

using namespace lmr;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string chomp(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

Term input_term(const std::string& inline_term, const std::string& file) {
    if (!inline_term.empty()) return parse_term(inline_term);
    if (!file.empty()) return parse_term(chomp(read_file(file)));
    throw std::runtime_error("no term given: use -e or a file argument");
}

Hints hints_from_json(const nlohmann::json& j) {
    Hints h;
    if (j.contains("pool"))
        for (const auto& s : j.at("pool")) h.pool.push_back(parse_type(s.get<std::string>()));
    if (j.contains("args"))
        for (const auto& [arg, types] : j.at("args").items())
            for (const auto& s : types) h.per_arg[arg].push_back(parse_type(s.get<std::string>()));
    return h;
}

struct DemoEntry {
    std::string name;
    std::string description;
    // Returns the printed observation; throws on failure.
    std::function<std::string(int fuel)> run;
};

std::string eval_to_int(const Term& t, int fuel) {
    NormalizeResult r = normalize(t, fuel);
    if (!r.normal) throw EvalError("out of fuel");
    return print_term(r.term);
}

std::vector<DemoEntry> demo_entries() {
    std::vector<DemoEntry> out;
    out.push_back({"merge-override", "right-biased merge keeps the right field", [](int fuel) {
                       Term t = parse_term("{a = 1} ++ {a = ()}");
                       return eval_to_int(t, fuel);
                   }});
    out.push_back({"point-get", "reading a fixed-point object's field", [](int fuel) {
                       Term point = fix(Term::app(point_term(), Term::integer(3)));
                       return eval_to_int(Term::sel(point, "get"), fuel);
                   }});
    out.push_back({"movable-move", "moving a recursive point by 4", [](int fuel) {
                       Term movable = fix(Term::app(
                           fix(Term::app(movable_term(), recpoint_term())), Term::integer(3)));
                       Term moved = Term::app(Term::sel(movable, "move"), Term::integer(4));
                       auto rec = whnf_record(moved, fuel);
                       if (!rec) throw EvalError("move did not produce a record");
                       return eval_to_int(Term::sel(Term::record(*rec), "X"), fuel);
                   }});
    out.push_back({"point2d-get", "two-dimensional get returns the coordinate pair", [](int fuel) {
                       Term cls = Term::app(point2d_term(), point_term());
                       Term obj = fix(apps(cls, {Term::integer(3), Term::integer(4)}));
                       return eval_to_int(Term::sel(obj, "get"), fuel);
                   }});
    out.push_back({"pipeline-get", "set/new/move/new state threading ends at 3", [](int fuel) {
                       return eval_to_int(pipeline_term(), fuel);
                   }});
    for (const auto& e : stdlib()) {
        for (std::size_t i = 0; i < e.typings.size(); ++i) {
            std::string name = e.name + "-type" + (e.typings.size() > 1 ? std::to_string(i) : "");
            Type goal = e.typings[i].goal;
            Hints hints = e.typings[i].hints;
            Term term = e.term;
            out.push_back({name, e.summary + " : " + print_type(goal).substr(0, 60),
                           [term, goal, hints](int) {
                               auto d = check({}, term, goal, hints);
                               if (!d) throw EvalError("derivation not found");
                               return "ok: " + print_type(goal);
                           }});
        }
    }
    return out;
}

int run_demo(const std::string& name, int fuel) {
    auto entries = demo_entries();
    if (name == "list") {
        for (const auto& e : entries) std::cout << e.name << "  --  " << e.description << "\n";
        return 0;
    }
    bool all = name == "all";
    bool any_failed = false;
    bool any_matched = false;
    for (const auto& e : entries) {
        if (!all && e.name != name) continue;
        any_matched = true;
        try {
            std::string result = e.run(fuel);
            if (all)
                std::cout << e.name << ": " << result << "\n";
            else
                std::cout << result << "\n";
        } catch (const std::exception& ex) {
            any_failed = true;
            std::cerr << e.name << " failed: " << ex.what() << "\n";
        }
    }
    if (!any_matched) {
        std::cerr << "unknown demo '" << name << "' (try: lmr demo list)\n";
        return 2;
    }
    return any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lmr: a record-merge lambda calculus with intersection types"};
    app.require_subcommand(1);
    int fuel = kDefaultFuel;
    std::string format = "plain";

    auto* eval_cmd = app.add_subcommand("eval", "reduce a term to normal form");
    std::string eval_inline, eval_file;
    bool trace = false;
    eval_cmd->add_option("-e,--expr", eval_inline, "inline term");
    eval_cmd->add_option("file", eval_file, "file holding a term");
    eval_cmd->add_option("--fuel", fuel, "maximum number of reduction steps");
    eval_cmd->add_flag("--trace", trace, "print one line per reduction step");
    eval_cmd->add_option("--format", format, "output format (plain)");

    auto* sub_cmd = app.add_subcommand("sub", "decide type inclusion");
    std::string sub_left, sub_right;
    sub_cmd->add_option("left", sub_left, "left type")->required();
    sub_cmd->add_option("right", sub_right, "right type")->required();

    auto* check_cmd = app.add_subcommand("check", "search for a typing derivation");
    std::string check_term, check_type, check_ctx_file, check_hints_file, check_emit;
    check_cmd->add_option("-e,--expr", check_term, "term to type")->required();
    check_cmd->add_option("-t,--type", check_type, "goal type")->required();
    check_cmd->add_option("--ctx-file", check_ctx_file, "JSON file {\"x\": \"type\", ...}");
    check_cmd->add_option("--hints-file", check_hints_file,
                          "JSON file {\"pool\": [...], \"args\": {\"term\": [...]}}");
    check_cmd->add_option("--emit", check_emit, "write the found derivation to this file");

    auto* verify_cmd = app.add_subcommand("verify", "verify a derivation file");
    std::string verify_file;
    verify_cmd->add_option("file", verify_file, "derivation JSON file")->required();

    auto* enum_cmd = app.add_subcommand("enum", "enumerate types in a bounded universe");
    std::string enum_term, enum_atoms = "Int";
    int enum_depth = 2;
    std::size_t enum_cap = 4000;
    enum_cmd->add_option("-e,--expr", enum_term, "term")->required();
    enum_cmd->add_option("--atoms", enum_atoms, "comma-separated ground atoms");
    enum_cmd->add_option("--depth", enum_depth, "maximum type depth");
    enum_cmd->add_option("--cap", enum_cap, "universe size limit");

    auto* demo_cmd = app.add_subcommand("demo", "run a built-in demo (or: all, list)");
    std::string demo_name = "list";
    demo_cmd->add_option("name", demo_name, "demo name, 'all', or 'list'");
    demo_cmd->add_option("--fuel", fuel, "maximum number of reduction steps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (*eval_cmd) {
            Term t = input_term(eval_inline, eval_file);
            std::vector<TraceEntry> steps;
            NormalizeResult r = normalize(t, fuel, trace ? &steps : nullptr);
            for (const auto& s : steps) std::cout << trace_line(s) << "\n";
            std::cout << print_term(r.term) << "\n";
            if (!r.normal) {
                std::cerr << "fuel exhausted after " << r.steps << " steps\n";
                return 1;
            }
            return 0;
        }
        if (*sub_cmd) {
            bool ok = subtype(parse_type(sub_left), parse_type(sub_right));
            std::cout << (ok ? "true" : "false") << "\n";
            return ok ? 0 : 1;
        }
        if (*check_cmd) {
            Context ctx;
            if (!check_ctx_file.empty()) {
                auto j = nlohmann::json::parse(read_file(check_ctx_file));
                std::map<std::string, Type> bindings;
                for (const auto& [name, ty] : j.items())
                    bindings.insert_or_assign(name, parse_type(ty.get<std::string>()));
                ctx = Context(bindings);
            }
            Hints hints;
            if (!check_hints_file.empty())
                hints = hints_from_json(nlohmann::json::parse(read_file(check_hints_file)));
            auto d = check(ctx, parse_term(check_term), parse_type(check_type), hints);
            if (!d) {
                std::cout << "not found" << "\n";
                return 1;
            }
            std::cout << "found: " << print_judgment(d->conclusion) << "\n";
            if (!check_emit.empty()) {
                std::ofstream out(check_emit);
                out << to_json(*d).dump(2) << "\n";
            }
            return 0;
        }
        if (*verify_cmd) {
            auto j = nlohmann::json::parse(read_file(verify_file));
            Derivation d = derivation_from_json(j);
            try {
                Judgment root = verify(d);
                std::cout << print_judgment(root) << "\n";
                return 0;
            } catch (const VerifyError& e) {
                std::cerr << e.what() << "\n";
                return 1;
            }
        }
        if (*enum_cmd) {
            std::vector<std::string> atoms;
            std::stringstream ss(enum_atoms);
            std::string atom;
            while (std::getline(ss, atom, ','))
                if (!atom.empty()) atoms.push_back(atom);
            auto types = enumerate_types({}, parse_term(enum_term), atoms, enum_depth, enum_cap);
            for (const auto& ty : types) std::cout << print_type(ty) << "\n";
            return 0;
        }
        if (*demo_cmd) return run_demo(demo_name, fuel);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const UniverseLimitError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 2;
}
