#include "qexplain/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "qexplain/error.hpp"
#include "qexplain/query.hpp"
#include "qexplain/relational.hpp"
#include "qexplain/relevance.hpp"
#include "qexplain/shapley.hpp"
#include "qexplain/support.hpp"

namespace qexplain::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string db_path;
    std::string query_path;
    std::string format = "table";
    std::string fact;
    std::string measure = "ms-signed";
    std::string weight = "reciprocal";
    std::string method = "auto";
    std::string kind = "signed";
    bool all_supports = false;
    std::size_t parallel = 1;
    std::size_t cap_signed = kDefaultSignedCap;
    std::size_t cap_subset = kDefaultSubsetCap;
    std::size_t cap_perm = kDefaultPermutationCap;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Rows and rendering

using Cell = std::variant<std::monostate, Rational, bool, std::string, std::uint64_t>;

struct Row {
    std::string fact;
    std::vector<std::pair<std::string, Cell>> cells;

    void set(std::string column, Cell value) { cells.emplace_back(std::move(column), std::move(value)); }
};

Json rational_json(const Rational& r) { return Json{{"num", r.numerator()}, {"den", r.denominator()}}; }

Json cell_json(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return nullptr;
            else if constexpr (std::is_same_v<T, Rational>)
                return rational_json(v);
            else
                return v;
        },
        c);
}

std::string cell_text(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return "-";
            else if constexpr (std::is_same_v<T, Rational>)
                return v.str();
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "yes" : "no";
            else if constexpr (std::is_same_v<T, std::string>)
                return v;
            else
                return std::to_string(v);
        },
        c);
}

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& lines)
{
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i)
        width[i] = header[i].size();
    for (const auto& line : lines)
        for (std::size_t i = 0; i < line.size(); ++i)
            width[i] = std::max(width[i], line[i].size());
    auto emit = [&](const std::vector<std::string>& line) {
        std::string text;
        for (std::size_t i = 0; i < line.size(); ++i) {
            text += line[i];
            if (i + 1 < line.size())
                text += std::string(width[i] - line[i].size() + 2, ' ');
        }
        out << text << '\n';
    };
    emit(header);
    for (const auto& line : lines)
        emit(line);
}

void render_rows(std::ostream& out, const Options& opt, const Json& meta, const std::vector<Row>& rows)
{
    if (opt.format == "json") {
        Json doc = meta;
        doc["rows"] = Json::array();
        for (const auto& row : rows) {
            Json r{{"fact", row.fact}};
            for (const auto& [k, v] : row.cells)
                r[k] = cell_json(v);
            doc["rows"].push_back(std::move(r));
        }
        out << doc.dump(2) << '\n';
        return;
    }
    std::vector<std::string> header{"fact"};
    for (const auto& row : rows)
        for (const auto& [k, v] : row.cells)
            if (std::find(header.begin(), header.end(), k) == header.end())
                header.push_back(k);
    std::vector<std::vector<std::string>> lines;
    for (const auto& row : rows) {
        std::vector<std::string> line{row.fact};
        for (std::size_t i = 1; i < header.size(); ++i) {
            auto it = std::find_if(row.cells.begin(), row.cells.end(),
                                   [&](const auto& kv) { return kv.first == header[i]; });
            line.push_back(it == row.cells.end() ? "-" : cell_text(it->second));
        }
        lines.push_back(std::move(line));
    }
    print_table(out, header, lines);
}

// ---------------------------------------------------------------------------
// Inputs

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Query load_query(const Options& opt) { return parse_query(read_file(opt.query_path)); }

Database load_db(const Options& opt, const Query& q)
{
    return extend_schema(load_database(opt.db_path), q);
}

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Results are
/// written by index, so output order does not depend on scheduling.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn)
{
    workers = std::max<std::size_t>(1, std::min(workers, n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Scoring

WealthKind parse_measure(const std::string& name)
{
    for (auto kind : {WealthKind::ms_signed, WealthKind::mps_positive, WealthKind::drastic_direct,
                      WealthKind::signed_drastic, WealthKind::positive_drastic})
        if (to_string(kind) == name)
            return kind;
    throw UsageError("unknown measure " + name);
}

bool is_count_measure(WealthKind kind) { return kind == WealthKind::ms_signed || kind == WealthKind::mps_positive; }

struct Outcome {
    std::optional<Rational> value;
    std::string method;
    std::optional<PermutationResult> permutation;
    std::optional<std::string> error;
};

/// Scores the players of one wealth function with a fixed method.
class Scorer {
public:
    Scorer(WealthKind kind, const Query& q, const Database& db, const Options& opt)
        : kind_(kind), q_(q), db_(db), opt_(opt), weight_(weight_function(opt.weight))
    {
        method_ = opt.method;
        if (method_ == "closed-form" && !is_count_measure(kind))
            throw UsageError("closed-form is only available for ms-signed and mps");
        if (method_ != "auto" && method_ != "closed-form" && method_ != "subset" && method_ != "permutation")
            throw UsageError("unknown method " + method_);
        if (method_ == "auto" && is_count_measure(kind))
            method_ = "closed-form";
        if (opt.weight != "reciprocal" && method_ != "closed-form")
            throw UsageError("weight " + opt.weight + " requires the closed-form method");

        if (method_ == "closed-form") {
            if (is_signed_kind(kind))
                players_ = signed_database_restricted(db, q, opt.cap_signed).signed_facts;
            else
                for (const auto& f : db.facts())
                    players_.push_back(SignedFact::plus(f));
            return;
        }

        wealth_.emplace(kind, q, db, opt.cap_signed);
        players_ = wealth_->players();
        const auto active = wealth_->non_null_players();
        if (method_ == "auto")
            method_ = active.size() <= opt.cap_subset ? "subset" : "permutation";
        try {
            game_.emplace(Game::tabulate(*wealth_, active, std::max(opt.cap_subset, opt.cap_perm)));
            if (method_ == "subset" && active.size() > opt.cap_subset)
                throw CapExceeded("subset formula over " + std::to_string(active.size()) + " players",
                                  active.size(), opt.cap_subset);
        } catch (const CapExceeded& e) {
            game_error_ = e.what();
        }
    }

    const std::vector<SignedFact>& players() const { return players_; }
    const std::string& method() const { return method_; }

    Outcome score(const SignedFact& target) const
    {
        Outcome out;
        out.method = method_;
        try {
            if (method_ == "closed-form") {
                const auto mode = is_signed_kind(kind_) ? SupportMode::signed_mode : SupportMode::positive;
                out.value = ms_shapley(q_, db_, target, mode, weight_, opt_.cap_signed).value;
                return out;
            }
            const auto index = wealth_->index_of(target);
            if (!index) {
                out.value = Rational(0);
                return out;
            }
            if (game_error_) {
                out.error = game_error_;
                return out;
            }
            const auto pos = game_->position_of(*index);
            if (method_ == "subset") {
                out.value = pos ? shapley_subset(*game_, *pos) : Rational(0);
            } else if (pos) {
                out.permutation = shapley_permutation(*game_, *pos, opt_.cap_perm);
                out.value = out.permutation->value;
            } else {
                out.value = Rational(0);
            }
        } catch (const CapExceeded& e) {
            out.value.reset();
            out.error = e.what();
        }
        return out;
    }

private:
    static WeightFunction weight_function(const std::string& name)
    {
        if (name == "reciprocal")
            return WeightFunction::reciprocal();
        if (name == "constant")
            return WeightFunction::constant();
        throw UsageError("unknown weight " + name);
    }

    WealthKind kind_;
    const Query& q_;
    const Database& db_;
    const Options& opt_;
    WeightFunction weight_;
    std::string method_;
    std::vector<SignedFact> players_;
    std::optional<Wealth> wealth_;
    std::optional<Game> game_;
    std::optional<std::string> game_error_;
};

/// Resolves --fact against the player set; facts of the completion that are
/// not players score 0.
SignedFact resolve_target(const std::string& text, WealthKind kind, const Database& db)
{
    SignedFact target = parse_signed_fact(text);
    if (!is_signed_kind(kind)) {
        if (target.sign != Sign::positive)
            throw SemanticError(to_string(kind) + " scores facts of the database, not " + target.str());
        if (!db.contains(target.fact))
            throw SemanticError("fact " + target.fact.str() + " is not in the database");
    } else if (!in_signed_database(target, db)) {
        throw SemanticError(target.str() + " is not in the signed database");
    }
    return target;
}

std::string player_label(const SignedFact& sf, WealthKind kind)
{
    return is_signed_kind(kind) ? sf.str() : sf.fact.str();
}

int cmd_score(const Options& opt, std::ostream& out)
{
    const auto q = load_query(opt);
    const auto db = load_db(opt, q);
    const auto kind = parse_measure(opt.measure);
    const Scorer scorer(kind, q, db, opt);

    std::vector<SignedFact> targets;
    if (opt.fact.empty())
        targets = scorer.players();
    else
        targets.push_back(resolve_target(opt.fact, kind, db));

    std::vector<Outcome> outcomes(targets.size());
    parallel_for(targets.size(), opt.parallel, [&](std::size_t i) { outcomes[i] = scorer.score(targets[i]); });

    bool capped = false;
    std::vector<Row> rows;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        Row row{player_label(targets[i], kind), {}};
        const auto& o = outcomes[i];
        row.set(opt.measure, o.value ? Cell(*o.value) : Cell{});
        if (o.permutation) {
            row.set("orderings", o.permutation->orderings);
            row.set("positive-impact", o.permutation->positive_impact);
            row.set("negative-impact", o.permutation->negative_impact);
        }
        if (o.error) {
            row.set("error", *o.error);
            capped = true;
        }
        rows.push_back(std::move(row));
    }
    const Json meta{{"command", "score"},
                    {"query", q.str()},
                    {"measure", opt.measure},
                    {"method", scorer.method()},
                    {"weight", opt.weight}};
    render_rows(out, opt, meta, rows);
    return capped ? cap_exceeded : ok;
}

// ---------------------------------------------------------------------------
// Relevance and comparison

Cell impact_cell(const std::optional<Impact>& impact)
{
    return impact ? Cell(to_string(*impact)) : Cell{};
}

int cmd_relevance(const Options& opt, std::ostream& out)
{
    const auto q = load_query(opt);
    const auto db = load_db(opt, q);
    std::vector<Row> rows;
    for (const auto& v : relevance_report(q, db, opt.cap_subset, opt.cap_signed)) {
        Row row{v.fact.str(), {}};
        row.set("signed", v.signed_relevant);
        row.set("positive", v.positive_relevant ? Cell(*v.positive_relevant) : Cell{});
        row.set("impact", impact_cell(v.impact));
        rows.push_back(std::move(row));
    }
    render_rows(out, opt, Json{{"command", "relevance"}, {"query", q.str()}}, rows);
    return ok;
}

int cmd_compare(const Options& opt, std::ostream& out)
{
    const auto q = load_query(opt);
    const auto db = load_db(opt, q);
    Options scoring = opt;
    scoring.method = "auto";
    scoring.weight = "reciprocal";

    const auto report = relevance_report(q, db, opt.cap_subset, opt.cap_signed);
    // Signed measure and drastic measure for each of signed, positive and impact.
    const std::vector<std::pair<std::string, WealthKind>> measures{
        {"signed-ms", WealthKind::ms_signed},        {"signed-drastic", WealthKind::signed_drastic},
        {"positive-ms", WealthKind::mps_positive},   {"positive-drastic", WealthKind::positive_drastic},
        {"impact-drastic", WealthKind::drastic_direct}};
    std::vector<std::unique_ptr<Scorer>> scorers;
    for (const auto& [name, kind] : measures)
        scorers.push_back(std::make_unique<Scorer>(kind, q, db, scoring));

    std::vector<std::vector<Outcome>> cells(report.size(), std::vector<Outcome>(measures.size()));
    parallel_for(report.size(), opt.parallel, [&](std::size_t i) {
        for (std::size_t m = 0; m < measures.size(); ++m)
            if (report[i].plain || is_signed_kind(measures[m].second))
                cells[i][m] = scorers[m]->score(report[i].fact);
    });

    bool capped = false;
    std::vector<Row> rows;
    for (std::size_t i = 0; i < report.size(); ++i) {
        const auto& v = report[i];
        Row row{v.fact.str(), {}};
        row.set("signed-relevant", v.signed_relevant);
        row.set("positive-relevant", v.positive_relevant ? Cell(*v.positive_relevant) : Cell{});
        row.set("impact", impact_cell(v.impact));
        for (std::size_t m = 0; m < measures.size(); ++m) {
            const auto& o = cells[i][m];
            row.set(measures[m].first, o.value ? Cell(*o.value) : Cell{});
            capped = capped || o.error.has_value();
        }
        rows.push_back(std::move(row));
    }
    render_rows(out, opt, Json{{"command", "compare"}, {"query", q.str()}}, rows);
    return capped ? cap_exceeded : ok;
}

// ---------------------------------------------------------------------------
// Supports and analysis

SupportKind parse_kind(const std::string& name)
{
    if (name == "signed")
        return SupportKind::signed_support;
    if (name == "positive")
        return SupportKind::positive;
    if (name == "dmonotone")
        return SupportKind::d_monotone;
    throw UsageError("unknown support kind " + name);
}

// Every support (minimal or not) among subsets of the candidate universe.
std::vector<SupportSet> all_supports(SupportKind kind, const Query& q, const Database& db,
                                     const std::vector<SupportSet>& minimal, const Options& opt)
{
    std::vector<SignedFact> universe;
    if (kind == SupportKind::signed_support)
        universe = signed_database_restricted(db, q, opt.cap_signed).signed_facts;
    else
        for (const auto& f : db.facts())
            universe.push_back(SignedFact::plus(f));
    if (universe.size() > opt.cap_subset)
        throw CapExceeded("listing all supports over " + std::to_string(universe.size()) + " elements",
                          universe.size(), opt.cap_subset);

    const auto signed_query = sign_transform(q);
    std::vector<SupportSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << universe.size()); ++mask) {
        SupportSet s{kind, {}, false};
        for (std::size_t i = 0; i < universe.size(); ++i)
            if (mask >> i & 1U)
                s.elements.push_back(universe[i]);
        bool holds = false;
        if (kind == SupportKind::signed_support) {
            holds = satisfies_signed(signed_query, s.elements);
        } else {
            const auto facts = s.facts();
            holds = kind == SupportKind::positive ? is_positive_support(facts, q, db)
                                                  : is_d_monotone_support(facts, q, db, opt.cap_subset);
        }
        if (!holds)
            continue;
        s.minimal = std::any_of(minimal.begin(), minimal.end(),
                                [&](const SupportSet& m) { return m.elements == s.elements; });
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const SupportSet& a, const SupportSet& b) {
        return std::pair(a.size(), a.elements) < std::pair(b.size(), b.elements);
    });
    return out;
}

int cmd_supports(const Options& opt, std::ostream& out)
{
    const auto q = load_query(opt);
    const auto db = load_db(opt, q);
    const auto kind = parse_kind(opt.kind);
    std::vector<SupportSet> supports;
    switch (kind) {
    case SupportKind::signed_support: supports = minimal_signed_supports(q, db, opt.cap_signed); break;
    case SupportKind::positive: supports = minimal_positive_supports(q, db); break;
    default: supports = minimal_d_monotone_supports(q, db, opt.cap_subset); break;
    }
    if (opt.all_supports)
        supports = all_supports(kind, q, db, supports, opt);

    if (opt.format == "json") {
        Json doc{{"command", "supports"}, {"query", q.str()}, {"kind", opt.kind}, {"supports", Json::array()}};
        for (const auto& s : supports) {
            Json elements = Json::array();
            for (const auto& e : s.elements)
                elements.push_back(kind == SupportKind::signed_support ? e.str() : e.fact.str());
            doc["supports"].push_back(Json{{"size", s.size()}, {"minimal", s.minimal}, {"elements", elements}});
        }
        out << doc.dump(2) << '\n';
        return ok;
    }
    std::vector<std::vector<std::string>> lines;
    for (const auto& s : supports)
        lines.push_back({std::to_string(s.size()), s.minimal ? "yes" : "no", s.str()});
    print_table(out, {"size", "minimal", "support"}, lines);
    return ok;
}

std::string pairs_text(const std::vector<std::pair<std::size_t, std::size_t>>& pairs)
{
    std::string text;
    for (const auto& [i, j] : pairs)
        text += (text.empty() ? "" : " ") + std::to_string(i) + "~" + std::to_string(j);
    return text.empty() ? "-" : text;
}

int cmd_analyze(const Options& opt, std::ostream& out)
{
    const auto q = load_query(opt);
    const auto a = analyze(q);
    std::vector<std::string> negated;
    for (const auto& r : a.negated_relations)
        negated.push_back(r.str());

    if (opt.format == "json") {
        Json doc{{"command", "analyze"},
                 {"query", q.str()},
                 {"guarded", a.guarded},
                 {"negative-arity", a.negative_arity},
                 {"negated-relations", negated},
                 {"self-join-free", a.self_join_free},
                 {"self-join-free-with-negations", a.self_join_free_with_negations},
                 {"self-join-width", a.self_join_width},
                 {"neg-path", a.has_non_hierarchical_neg_path ? Json(*a.has_non_hierarchical_neg_path) : Json()}};
        doc["disjuncts"] = Json::array();
        for (const auto& d : a.disjuncts) {
            Json pairs = Json::array();
            for (const auto& [i, j] : d.mergeable_pairs)
                pairs.push_back(Json::array({i, j}));
            doc["disjuncts"].push_back(Json{{"guarded", d.guarded},
                                            {"self-join-free", d.self_join_free},
                                            {"self-join-free-with-negations", d.self_join_free_with_negations},
                                            {"mergeable-pairs", pairs},
                                            {"self-join-width", d.self_join_width},
                                            {"neg-path", d.non_hierarchical_neg_path}});
        }
        out << doc.dump(2) << '\n';
        return ok;
    }

    auto yes_no = [](bool b) { return std::string(b ? "yes" : "no"); };
    std::string negated_text;
    for (const auto& r : negated)
        negated_text += (negated_text.empty() ? "" : " ") + r;
    std::vector<std::vector<std::string>> lines{
        {"query", q.str()},
        {"guarded", yes_no(a.guarded)},
        {"negative-arity", std::to_string(a.negative_arity)},
        {"negated-relations", negated_text.empty() ? "-" : negated_text},
        {"self-join-free", yes_no(a.self_join_free)},
        {"self-join-free-with-negations", yes_no(a.self_join_free_with_negations)},
        {"self-join-width", std::to_string(a.self_join_width)},
        {"neg-path", a.has_non_hierarchical_neg_path ? yes_no(*a.has_non_hierarchical_neg_path) : "-"}};
    for (std::size_t i = 0; i < a.disjuncts.size(); ++i) {
        const auto& d = a.disjuncts[i];
        const std::string p = "disjunct " + std::to_string(i) + " ";
        lines.push_back({p + "guarded", yes_no(d.guarded)});
        lines.push_back({p + "mergeable-pairs", pairs_text(d.mergeable_pairs)});
        lines.push_back({p + "self-join-width", std::to_string(d.self_join_width)});
        lines.push_back({p + "neg-path", yes_no(d.non_hierarchical_neg_path)});
    }
    print_table(out, {"property", "value"}, lines);
    return ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Explanations and Shapley scores for queries with negation over relational databases"};
    app.name(args.empty() ? "qexplain" : args[0]);
    app.require_subcommand(1);

    auto add_inputs = [&](CLI::App* cmd, bool needs_db) {
        if (needs_db)
            cmd->add_option("--db", opt.db_path, "facts file")->required();
        cmd->add_option("--query", opt.query_path, "query file")->required();
        cmd->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"table", "json"}));
        cmd->add_option("--cap-signed", opt.cap_signed, "largest signed database to build");
        cmd->add_option("--cap-subset", opt.cap_subset, "most players for exhaustive subset enumeration");
        cmd->add_option("--parallel", opt.parallel, "worker threads for per-fact work")->check(CLI::PositiveNumber);
    };

    auto* supports = app.add_subcommand("supports", "list minimal supports");
    add_inputs(supports, true);
    supports->add_option("--kind", opt.kind, "signed, positive or dmonotone")
        ->check(CLI::IsMember({"signed", "positive", "dmonotone"}));
    supports->add_flag("--all", opt.all_supports, "list every support, not only minimal ones");

    auto* score = app.add_subcommand("score", "Shapley scores of facts");
    add_inputs(score, true);
    score->add_option("--fact", opt.fact, "score a single fact, e.g. \"+R(a,b)\"");
    score->add_option("--measure", opt.measure, "ms-signed, mps, drastic, signed-drastic or positive-drastic")
        ->check(CLI::IsMember({"ms-signed", "mps", "drastic", "signed-drastic", "positive-drastic"}));
    score->add_option("--weight", opt.weight, "reciprocal or constant")
        ->check(CLI::IsMember({"reciprocal", "constant"}));
    score->add_option("--method", opt.method, "auto, closed-form, subset or permutation")
        ->check(CLI::IsMember({"auto", "closed-form", "subset", "permutation"}));
    score->add_option("--cap-perm", opt.cap_perm, "most players for permutation enumeration");

    auto* relevance = app.add_subcommand("relevance", "relevance verdicts per fact");
    add_inputs(relevance, true);

    auto* analyze_cmd = app.add_subcommand("analyze", "structural properties of the query");
    add_inputs(analyze_cmd, false);

    auto* compare = app.add_subcommand("compare", "relevance notions against scores");
    add_inputs(compare, true);
    compare->add_option("--cap-perm", opt.cap_perm, "most players for permutation enumeration");

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    try {
        if (*supports)
            return cmd_supports(opt, out);
        if (*score)
            return cmd_score(opt, out);
        if (*relevance)
            return cmd_relevance(opt, out);
        if (*analyze_cmd)
            return cmd_analyze(opt, out);
        return cmd_compare(opt, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return usage_error;
    } catch (const SemanticError& e) {
        err << "error: " << e.what() << '\n';
        return semantic_error;
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << '\n';
        return cap_exceeded;
    }
}

} // namespace qexplain::cli
