#include <algorithm>
#include <deque>
#include <map>

#include "qexplain/query.hpp"

namespace qexplain {

namespace {

// Union-find over tagged term names, used to unify two atoms renamed apart.
class Unifier {
public:
    std::string find(const std::string& x)
    {
        auto it = parent_.find(x);
        if (it == parent_.end() || it->second == x)
            return x;
        return it->second = find(it->second);
    }

    bool unite(const std::string& a, const std::string& b)
    {
        auto ra = find(a);
        auto rb = find(b);
        if (ra == rb)
            return true;
        // A class holds at most one constant, kept as its representative.
        const bool ca = ra.front() == 'c';
        const bool cb = rb.front() == 'c';
        if (ca && cb)
            return false;
        if (cb)
            std::swap(ra, rb);
        parent_[rb] = ra;
        return true;
    }

private:
    std::map<std::string, std::string> parent_;
};

std::string tagged(const Term& t, char side)
{
    return t.is_variable() ? std::string(1, side) + ":" + t.symbol : "c:" + t.symbol;
}

bool unifiable(const Literal& a, const Literal& b)
{
    if (a.relation != b.relation)
        return false;
    Unifier u;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
        if (!u.unite(tagged(a.terms[i], 'l'), tagged(b.terms[i], 'r')))
            return false;
    return true;
}

} // namespace

std::vector<std::pair<std::size_t, std::size_t>> mergeable_pairs(const ConjunctNeg& cq)
{
    const auto atoms = cq.positive_atoms();
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = i + 1; j < atoms.size(); ++j)
            if (unifiable(atoms[i], atoms[j]))
                out.emplace_back(i, j);
    return out;
}

std::size_t self_join_width(const ConjunctNeg& cq)
{
    const auto atoms = cq.positive_atoms();
    std::set<std::size_t> mergeable;
    for (auto [i, j] : mergeable_pairs(cq)) {
        mergeable.insert(i);
        mergeable.insert(j);
    }
    std::set<Term> terms;
    for (auto i : mergeable)
        terms.insert(atoms[i].terms.begin(), atoms[i].terms.end());
    return terms.size();
}

bool is_guarded(const ConjunctNeg& cq)
{
    const auto positives = cq.positive_atoms();
    for (const auto& neg : cq.negated_atoms()) {
        const auto needed = neg.variables();
        const bool covered = std::any_of(positives.begin(), positives.end(), [&](const Literal& p) {
            const auto vars = p.variables();
            return std::includes(vars.begin(), vars.end(), needed.begin(), needed.end());
        });
        if (!covered)
            return false;
    }
    return true;
}

bool is_self_join_free(const ConjunctNeg& cq, bool count_negated_atoms)
{
    std::set<std::string> seen;
    for (const auto& lit : cq.literals()) {
        if (lit.kind == Literal::Kind::inequality)
            continue;
        if (lit.kind == Literal::Kind::negated_atom && !count_negated_atoms)
            continue;
        if (!seen.insert(lit.relation->name).second)
            return false;
    }
    return true;
}

bool has_non_hierarchical_neg_path(const ConjunctNeg& cq)
{
    std::set<std::string> negated;
    for (const auto& lit : cq.negated_atoms())
        negated.insert(lit.relation->name);

    // Gaifman graph over all literals, inequalities and negated atoms included.
    std::map<std::string, std::set<std::string>> adjacent;
    for (const auto& lit : cq.literals()) {
        const auto vars = lit.variables();
        for (const auto& u : vars)
            for (const auto& v : vars)
                if (u != v)
                    adjacent[u].insert(v);
    }

    auto connected = [&](const std::string& from, const std::string& to, const std::set<std::string>& removed) {
        std::set<std::string> seen{from};
        std::deque<std::string> frontier{from};
        while (!frontier.empty()) {
            auto u = frontier.front();
            frontier.pop_front();
            if (u == to)
                return true;
            for (const auto& v : adjacent[u])
                if (!removed.contains(v) && seen.insert(v).second)
                    frontier.push_back(v);
        }
        return false;
    };

    const auto atoms = cq.positive_atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            if (i == j || negated.contains(atoms[i].relation->name) || negated.contains(atoms[j].relation->name))
                continue;
            const auto vx = atoms[i].variables();
            const auto vy = atoms[j].variables();
            std::set<std::string> both = vx;
            both.insert(vy.begin(), vy.end());
            for (const auto& x : vx) {
                if (vy.contains(x))
                    continue;
                for (const auto& y : vy) {
                    if (vx.contains(y))
                        continue;
                    auto removed = both;
                    removed.erase(x);
                    removed.erase(y);
                    if (connected(x, y, removed))
                        return true;
                }
            }
        }
    }
    return false;
}

QueryAnalysis analyze(const Query& q)
{
    QueryAnalysis out;
    for (const auto& d : q.disjuncts()) {
        DisjunctAnalysis a;
        a.self_join_free = is_self_join_free(d, false);
        a.self_join_free_with_negations = is_self_join_free(d, true);
        a.mergeable_pairs = mergeable_pairs(d);
        a.self_join_width = self_join_width(d);
        a.guarded = is_guarded(d);
        a.non_hierarchical_neg_path = has_non_hierarchical_neg_path(d);

        out.self_join_free = out.self_join_free && a.self_join_free;
        out.self_join_free_with_negations = out.self_join_free_with_negations && a.self_join_free_with_negations;
        out.self_join_width = std::max(out.self_join_width, a.self_join_width);
        out.guarded = out.guarded && a.guarded;
        out.disjuncts.push_back(std::move(a));
    }
    out.negative_arity = negative_arity(q);
    out.negated_relations = neg_rels(q);
    if (q.disjuncts().size() == 1)
        out.has_non_hierarchical_neg_path = out.disjuncts.front().non_hierarchical_neg_path;
    return out;
}

} // namespace qexplain
