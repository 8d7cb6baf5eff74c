#pragma once
// Test-only inclusion oracle: closes the inclusion axioms over a finite type
// universe to a fixpoint, independently of the path-normalization decider.
//
// Seeded instances (both sides in the universe): reflexivity, s <= w,
// w <= w -> w, projections of intersections, the equal-domain arrow
// distribution, and the field distribution. Closure rules: transitivity,
// the glb rule, arrow and field congruence, and the two derivable
// glb-through-constructor rules
//   s <= r -> t1 and s <= r -> t2  gives  s <= r -> (t1 & t2)
//   s <= <a : t1> and s <= <a : t2> gives s <= <a : t1 & t2>
// (each is a projection/distribution composition; inside a depth-bounded
// universe the textbook derivation's intermediate intersection of arrows may
// not exist, so the composed rule is applied directly).

#include <map>
#include <vector>

#include "lmr/enumerate.hpp"

namespace lmr::testing {

class ClosureOracle {
public:
    explicit ClosureOracle(const TypeUniverse& u) : u_(u), n_(u.types.size()) {
        rows_.assign(n_, Bitset(n_));
        collect_instances();
        seed();
        fixpoint();
    }

    bool le(std::size_t a, std::size_t b) const { return rows_[a].get(b); }
    std::size_t size() const { return n_; }

private:
    struct GlbInstance {
        int left, right, target;  // target = constructor(left & right)
    };

    void collect_instances() {
        // arrows grouped by domain for congruence and arrow-glb
        std::map<int, std::vector<TypeUniverse::ArrowInfo>> by_dom;
        for (const auto& a : u_.arrows) by_dom[a.dom].push_back(a);
        for (const auto& [dom, group] : by_dom) {
            for (const auto& a1 : group) {
                for (const auto& a2 : group) {
                    int target = u_.find(Type::inter(u_.types[static_cast<std::size_t>(a1.cod)],
                                                     u_.types[static_cast<std::size_t>(a2.cod)]));
                    if (target < 0) continue;
                    int arrow_target =
                        u_.find(Type::arrow(u_.types[static_cast<std::size_t>(dom)],
                                            u_.types[static_cast<std::size_t>(target)]));
                    if (arrow_target >= 0)
                        arrow_glb_.push_back({a1.self, a2.self, arrow_target});
                }
            }
        }
        std::map<std::string, std::vector<TypeUniverse::FieldInfo>> by_label;
        for (const auto& f : u_.fields) by_label[f.label].push_back(f);
        for (const auto& [label, group] : by_label) {
            for (const auto& f1 : group) {
                for (const auto& f2 : group) {
                    int body = u_.find(Type::inter(u_.types[static_cast<std::size_t>(f1.body)],
                                                   u_.types[static_cast<std::size_t>(f2.body)]));
                    if (body < 0) continue;
                    int target = u_.find(Type::field(label, u_.types[static_cast<std::size_t>(body)]));
                    if (target >= 0) field_glb_.push_back({f1.self, f2.self, target});
                }
            }
        }
    }

    void set(std::size_t a, std::size_t b) { rows_[a].set(b); }

    void seed() {
        int omega = u_.find(Type::omega());
        for (std::size_t a = 0; a < n_; ++a) {
            set(a, a);
            if (omega >= 0) set(a, static_cast<std::size_t>(omega));
        }
        int omega_arrow = u_.find(Type::arrow(Type::omega(), Type::omega()));
        if (omega >= 0 && omega_arrow >= 0)
            set(static_cast<std::size_t>(omega), static_cast<std::size_t>(omega_arrow));
        for (const auto& in : u_.inters) {
            set(static_cast<std::size_t>(in.self), static_cast<std::size_t>(in.left));
            set(static_cast<std::size_t>(in.self), static_cast<std::size_t>(in.right));
        }
        // (s -> t1) & (s -> t2) <= s -> t1 & t2 instances are subsumed by the
        // arrow-glb rule together with the projections seeded above; the
        // field distribution likewise by field-glb.
    }

    void fixpoint() {
        bool changed = true;
        while (changed) {
            changed = false;
            // transitivity: row[a] |= row[b] for every b in row[a]
            for (std::size_t a = 0; a < n_; ++a)
                for (std::size_t b = 0; b < n_; ++b)
                    if (rows_[a].get(b) && a != b) changed |= rows_[a].or_with(rows_[b]);
            // glb: s <= l and s <= r gives s <= l & r
            for (const auto& in : u_.inters)
                for (std::size_t s = 0; s < n_; ++s)
                    if (!rows_[s].get(static_cast<std::size_t>(in.self)) &&
                        rows_[s].get(static_cast<std::size_t>(in.left)) &&
                        rows_[s].get(static_cast<std::size_t>(in.right))) {
                        rows_[s].set(static_cast<std::size_t>(in.self));
                        changed = true;
                    }
            // arrow congruence: dom2 <= dom1 and cod1 <= cod2
            for (const auto& a1 : u_.arrows)
                for (const auto& a2 : u_.arrows)
                    if (!rows_[static_cast<std::size_t>(a1.self)].get(
                            static_cast<std::size_t>(a2.self)) &&
                        rows_[static_cast<std::size_t>(a2.dom)].get(
                            static_cast<std::size_t>(a1.dom)) &&
                        rows_[static_cast<std::size_t>(a1.cod)].get(
                            static_cast<std::size_t>(a2.cod))) {
                        rows_[static_cast<std::size_t>(a1.self)].set(
                            static_cast<std::size_t>(a2.self));
                        changed = true;
                    }
            // field covariance
            for (const auto& f1 : u_.fields)
                for (const auto& f2 : u_.fields)
                    if (f1.label == f2.label &&
                        !rows_[static_cast<std::size_t>(f1.self)].get(
                            static_cast<std::size_t>(f2.self)) &&
                        rows_[static_cast<std::size_t>(f1.body)].get(
                            static_cast<std::size_t>(f2.body))) {
                        rows_[static_cast<std::size_t>(f1.self)].set(
                            static_cast<std::size_t>(f2.self));
                        changed = true;
                    }
            // glb through constructors
            for (const auto& g : arrow_glb_)
                for (std::size_t s = 0; s < n_; ++s)
                    if (!rows_[s].get(static_cast<std::size_t>(g.target)) &&
                        rows_[s].get(static_cast<std::size_t>(g.left)) &&
                        rows_[s].get(static_cast<std::size_t>(g.right))) {
                        rows_[s].set(static_cast<std::size_t>(g.target));
                        changed = true;
                    }
            for (const auto& g : field_glb_)
                for (std::size_t s = 0; s < n_; ++s)
                    if (!rows_[s].get(static_cast<std::size_t>(g.target)) &&
                        rows_[s].get(static_cast<std::size_t>(g.left)) &&
                        rows_[s].get(static_cast<std::size_t>(g.right))) {
                        rows_[s].set(static_cast<std::size_t>(g.target));
                        changed = true;
                    }
        }
    }

    const TypeUniverse& u_;
    std::size_t n_;
    std::vector<Bitset> rows_;
    std::vector<GlbInstance> arrow_glb_;
    std::vector<GlbInstance> field_glb_;
};

}  // namespace lmr::testing
