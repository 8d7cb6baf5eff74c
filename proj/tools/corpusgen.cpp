// Regenerates the derivation corpus under corpus/. Each file is found by the
// checker, re-verified, and serialized; the committed corpus is the output
// of this tool.

#include <fstream>
#include <iostream>
#include <string>

#include "lmr/lmr.hpp"

using namespace lmr;

namespace {

void emit(const std::string& dir, const std::string& name, const Context& ctx, const Term& t,
          const Type& goal, const Hints& hints = {}) {
    auto d = check(ctx, t, goal, hints);
    if (!d) {
        std::cerr << "FAILED to derive " << name << "\n";
        std::exit(1);
    }
    std::string path = dir + "/" + name + ".json";
    std::ofstream out(path);
    out << to_json(*d).dump(2) << "\n";
    std::cout << "wrote " << path << " :: " << print_judgment(d->conclusion) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "corpus";

    emit(dir, "merge_identity", {}, parse_term("\\x. x ++ {a = 1}"),
         parse_type("w -> {a : Int}"));
    emit(dir, "merge_width", {}, parse_term("\\x. x ++ {a = 1}"),
         parse_type("{b : Int} -> {a : Int} & {b : Int}"));
    emit(dir, "merge_applied", {}, parse_term("(\\x. x ++ {a = 1}) {b = 2}"),
         parse_type("{a : Int} & {b : Int}"));
    emit(dir, "record_select", {}, parse_term("{a = 3}.a"), parse_type("Int"));
    emit(dir, "merge_override", {}, parse_term("{a = 1} ++ {a = ()}"), parse_type("{a : Unit}"));
    emit(dir, "addition", {}, parse_term("3 + 4"), parse_type("Int"));
    emit(dir, "pair_projection", {}, parse_term("let (x, y) = {fst = 1, snd = ()} in x"),
         parse_type("Int"));

    {
        PointTypes p = point_types();
        Hints h;
        add_y_hints(h, {p.sigma1, p.sigma2});
        Term pre = Term::app(point_term(), Term::integer(3));
        h.add_arg(pre, y_chain_type({p.sigma1, p.sigma2}));
        Term subject = Term::sel(fix(pre), "get");
        emit(dir, "point_get", {}, subject, int_type(), h);
    }
    return 0;
}
