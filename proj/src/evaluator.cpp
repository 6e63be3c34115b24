#include "evaluator.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qexplain::detail {

FactIndex::FactIndex(std::span<const Fact> facts)
{
    sorted_.reserve(facts.size());
    for (const auto& f : facts)
        sorted_.push_back(&f);
    build();
}

FactIndex::FactIndex(std::vector<const Fact*> facts) : sorted_(std::move(facts)) { build(); }

void FactIndex::build()
{
    std::sort(sorted_.begin(), sorted_.end(), [](const Fact* a, const Fact* b) { return *a < *b; });
    sorted_.erase(std::unique(sorted_.begin(), sorted_.end(), [](const Fact* a, const Fact* b) { return *a == *b; }),
                  sorted_.end());
    for (const auto* f : sorted_)
        by_relation_[f->relation.name].push_back(f);
}

const std::vector<const Fact*>& FactIndex::of(const std::string& relation) const
{
    static const std::vector<const Fact*> none;
    auto it = by_relation_.find(relation);
    return it == by_relation_.end() ? none : it->second;
}

bool FactIndex::contains(const Fact& fact) const
{
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), &fact,
                               [](const Fact* a, const Fact* b) { return *a < *b; });
    return it != sorted_.end() && **it == fact;
}

CompiledConjunct::CompiledConjunct(const ConjunctNeg& cq) : source_(cq), variables_(cq.variables())
{
    std::map<std::string, std::size_t> constant_ids;
    for (const auto& lit : source_.literals())
        for (const auto& t : lit.terms)
            if (!t.is_variable() && !constant_ids.contains(t.symbol)) {
                constant_ids.emplace(t.symbol, constants_.size());
                constants_.push_back(Constant{t.symbol});
            }

    auto compile = [&](const Literal& lit) {
        CompiledLiteral out{&lit, {}};
        for (const auto& t : lit.terms)
            out.slots.push_back(t.is_variable() ? Slot{true, variable_index(t.symbol)}
                                                : Slot{false, constant_ids.at(t.symbol)});
        return out;
    };

    std::vector<bool> bound(variables_.size(), false);
    std::vector<const Literal*> pending;
    for (const auto& lit : source_.literals()) {
        if (lit.kind == Literal::Kind::positive_atom)
            positives_.push_back(compile(lit));
        else
            pending.push_back(&lit);
    }
    checks_.resize(positives_.size());
    for (std::size_t k = 0; k < positives_.size(); ++k) {
        for (const auto& s : positives_[k].slots)
            if (s.is_variable)
                bound[s.index] = true;
        for (auto it = pending.begin(); it != pending.end();) {
            const auto vars = (*it)->variables();
            const bool ready =
                std::all_of(vars.begin(), vars.end(), [&](const std::string& v) { return bound[variable_index(v)]; });
            if (ready) {
                checks_[k].push_back(compile(**it));
                it = pending.erase(it);
            } else {
                ++it;
            }
        }
    }
}

std::size_t CompiledConjunct::variable_index(const std::string& name) const
{
    auto it = std::find(variables_.begin(), variables_.end(), name);
    return static_cast<std::size_t>(it - variables_.begin());
}

Fact CompiledConjunct::ground(const CompiledLiteral& lit, const Binding& binding) const
{
    Fact f;
    f.relation = *lit.literal->relation;
    f.tuple.reserve(lit.slots.size());
    for (const auto& s : lit.slots)
        f.tuple.push_back(s.is_variable ? *binding[s.index] : constants_[s.index]);
    return f;
}

Fact CompiledConjunct::ground(const Literal& atom, const Binding& binding) const
{
    Fact f;
    f.relation = *atom.relation;
    for (const auto& t : atom.terms)
        f.tuple.push_back(t.is_variable() ? *binding[variable_index(t.symbol)] : Constant{t.symbol});
    return f;
}

bool CompiledConjunct::checks_hold(std::size_t depth, const PresenceTest& present, const Binding& binding) const
{
    for (const auto& c : checks_[depth]) {
        if (c.literal->kind == Literal::Kind::inequality) {
            auto value = [&](const Slot& s) { return s.is_variable ? binding[s.index] : &constants_[s.index]; };
            if (*value(c.slots[0]) == *value(c.slots[1]))
                return false;
        } else if (present && present(ground(c, binding))) {
            return false;
        }
    }
    return true;
}

bool CompiledConjunct::extend(std::size_t depth, const FactIndex& facts, const PresenceTest& present,
                              const MatchVisitor& visit, Binding& binding, std::vector<const Fact*>& images) const
{
    if (depth == positives_.size())
        return visit(binding, images);

    const auto& atom = positives_[depth];
    std::vector<std::size_t> newly_bound;
    for (const auto* fact : facts.of(atom.literal->relation->name)) {
        if (fact->tuple.size() != atom.slots.size())
            continue;
        bool ok = true;
        for (std::size_t i = 0; ok && i < atom.slots.size(); ++i) {
            const auto& s = atom.slots[i];
            const Constant& value = fact->tuple[i];
            if (!s.is_variable) {
                ok = constants_[s.index] == value;
            } else if (binding[s.index] == nullptr) {
                binding[s.index] = &value;
                newly_bound.push_back(s.index);
            } else {
                ok = *binding[s.index] == value;
            }
        }
        if (ok && checks_hold(depth, present, binding)) {
            images[depth] = fact;
            if (!extend(depth + 1, facts, present, visit, binding, images)) {
                for (auto v : newly_bound)
                    binding[v] = nullptr;
                return false;
            }
        }
        for (auto v : newly_bound)
            binding[v] = nullptr;
        newly_bound.clear();
    }
    return true;
}

bool CompiledConjunct::search(const FactIndex& facts, const PresenceTest& present, const MatchVisitor& visit) const
{
    Binding binding(variables_.size(), nullptr);
    std::vector<const Fact*> images(positives_.size(), nullptr);
    return extend(0, facts, present, visit, binding, images);
}

std::set<Constant> domain_of(std::span<const Fact> facts)
{
    std::set<Constant> out;
    for (const auto& f : facts)
        out.insert(f.tuple.begin(), f.tuple.end());
    return out;
}

bool over_domain(const Fact& fact, const std::set<Constant>& domain)
{
    return std::all_of(fact.tuple.begin(), fact.tuple.end(), [&](const Constant& c) { return domain.contains(c); });
}

PresenceTest closed_world(const Database& db)
{
    return [&db, domain = active_domain(db)](const Fact& f) { return !over_domain(f, domain) || db.contains(f); };
}

bool atom_matches(const Literal& atom, const Fact& fact)
{
    if (!atom.relation || atom.relation->name != fact.relation.name || atom.terms.size() != fact.tuple.size())
        return false;
    std::map<std::string, const Constant*> seen;
    for (std::size_t i = 0; i < atom.terms.size(); ++i) {
        const auto& t = atom.terms[i];
        if (!t.is_variable()) {
            if (t.symbol != fact.tuple[i].symbol)
                return false;
            continue;
        }
        auto [it, inserted] = seen.emplace(t.symbol, &fact.tuple[i]);
        if (!inserted && *it->second != fact.tuple[i])
            return false;
    }
    return true;
}

std::vector<Witness> compile_witnesses(const Query& q, const std::vector<Fact>& universe, NegationMode mode,
                                       const Database* context)
{
    const FactIndex index{std::span<const Fact>(universe)};
    auto position = [&](const Fact& f) -> std::optional<std::size_t> {
        auto it = std::lower_bound(universe.begin(), universe.end(), f);
        if (it == universe.end() || *it != f)
            return std::nullopt;
        return static_cast<std::size_t>(it - universe.begin());
    };

    const auto domain = domain_of(universe);
    PresenceTest present;
    if (mode == NegationMode::context)
        present = closed_world(*context);

    std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> seen;
    std::vector<Witness> out;
    for (const auto& d : q.disjuncts()) {
        const CompiledConjunct cq(d);
        const auto negated = d.negated_atoms();
        cq.search(index, present, [&](const Binding& binding, const std::vector<const Fact*>& images) {
            Witness w;
            for (const auto* f : images)
                w.positive.push_back(*position(*f));
            if (mode == NegationMode::self)
                for (const auto& n : negated) {
                    const Fact g = cq.ground(n, binding);
                    if (!over_domain(g, domain))
                        return true;
                    if (auto p = position(g))
                        w.negative.push_back(*p);
                }
            for (auto* v : {&w.positive, &w.negative}) {
                std::sort(v->begin(), v->end());
                v->erase(std::unique(v->begin(), v->end()), v->end());
            }
            // A witness whose positive image is also forbidden can never hold.
            std::vector<std::size_t> clash;
            std::set_intersection(w.positive.begin(), w.positive.end(), w.negative.begin(), w.negative.end(),
                                  std::back_inserter(clash));
            if (clash.empty() && seen.emplace(w.positive, w.negative).second)
                out.push_back(std::move(w));
            return true;
        });
    }
    return out;
}

} // namespace qexplain::detail
