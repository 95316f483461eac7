#include "bitswap/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "bitswap/errors.hpp"

namespace bitswap::io {

namespace pt = boost::property_tree;

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

namespace {

template <typename T>
std::string field(const std::optional<T>& v) {
    if (!v) {
        return {};
    }
    if constexpr (std::is_floating_point_v<T>) {
        return format_real(*v);
    } else {
        return std::to_string(*v);
    }
}

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

void write_csv(const harness::Report& report, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : report.rows) {
        out << quote_if_needed(r.label) << ',' << r.algorithm << ',' << r.fitness << ',' << r.n << ','
            << field(r.blocks) << ',' << field(r.block_length) << ',' << r.mu << ',' << r.lambda << ','
            << field(r.theory) << ',' << field(r.mean_tau) << ',' << field(r.std_tau) << ',' << field(r.ci95) << ','
            << field(r.converged) << ',' << field(r.censored) << ',' << field(r.paper_theory) << ','
            << field(r.paper_tau) << ',' << field(r.rel_dev_theory) << ',' << field(r.rel_dev_sim) << '\n';
    }
}

namespace {

template <typename T>
nlohmann::json json_field(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

} // namespace

nlohmann::json report_to_json(const harness::Report& report) {
    auto arr = nlohmann::json::array();
    for (const auto& r : report.rows) {
        arr.push_back({{"label", r.label},
                       {"algorithm", r.algorithm},
                       {"fitness", r.fitness},
                       {"n", r.n},
                       {"K", json_field(r.blocks)},
                       {"M", json_field(r.block_length)},
                       {"mu", r.mu},
                       {"lambda", r.lambda},
                       {"theory", json_field(r.theory)},
                       {"mean_tau", json_field(r.mean_tau)},
                       {"std_tau", json_field(r.std_tau)},
                       {"ci95", json_field(r.ci95)},
                       {"converged", json_field(r.converged)},
                       {"censored", json_field(r.censored)},
                       {"paper_theory", json_field(r.paper_theory)},
                       {"paper_tau", json_field(r.paper_tau)},
                       {"rel_dev_theory", json_field(r.rel_dev_theory)},
                       {"rel_dev_sim", json_field(r.rel_dev_sim)}});
    }
    return arr;
}

nlohmann::json trace_to_json(const RunRecord& record) {
    auto arr = nlohmann::json::array();
    for (const auto& t : record.trace) {
        arr.push_back({{"gen", t.generation},
                       {"best_fitness", t.best_fitness},
                       {"elite_count", t.elite_count},
                       {"best_aux", t.best_aux}});
    }
    return arr;
}

nlohmann::json experiment_to_json(const harness::ExperimentSpec& spec, const harness::ExperimentResult& result) {
    const auto& s = result.stats;
    nlohmann::json summary = {{"converged", s.converged}, {"censored", s.censored}};
    summary["mean_tau"] = s.mean_tau ? nlohmann::json(*s.mean_tau) : nlohmann::json(nullptr);
    summary["std_tau"] = s.std_tau;
    summary["ci95"] = s.ci95;
    summary["theory"] = s.theory_value ? nlohmann::json(*s.theory_value) : nlohmann::json(nullptr);

    nlohmann::json runs = nlohmann::json::array();
    for (std::size_t i = 0; i < result.runs.size(); ++i) {
        const auto& r = result.runs[i];
        runs.push_back({{"replication", i},
                        {"seed", r.seed},
                        {"hit_generation", r.hit_generation ? nlohmann::json(*r.hit_generation) : nlohmann::json(nullptr)},
                        {"trace", trace_to_json(r)}});
    }
    const auto& ea = spec.ea;
    nlohmann::json config = {{"algorithm", to_string(ea.algorithm.kind)},
                             {"swaps", ea.algorithm.swaps},
                             {"fitness", ea.fitness.is_royal_roads() ? "rr" : "onemax"},
                             {"n", ea.n},
                             {"mu", ea.mu},
                             {"lambda", ea.lambda},
                             {"init", to_string(ea.init)},
                             {"replace", to_string(ea.replace)},
                             {"elites", to_string(resolved_elites(ea))},
                             {"max_generations", ea.max_generations},
                             {"seed", ea.seed},
                             {"replications", spec.replications}};
    if (ea.fitness.is_royal_roads()) {
        config["K"] = ea.fitness.blocks();
        config["M"] = ea.fitness.block_length();
    }
    return {{"label", spec.label},
            {"rng", std::string(kRngAlgorithm)},
            {"config", config},
            {"summary", summary},
            {"runs", runs}};
}

nlohmann::json eta_to_json(const theory::TheoryQuery& q, const theory::EtaResult& r) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& t : r.per_level) {
        nlohmann::json level = {{"k", t.k}, {"expected_generations", t.expected_generations}};
        if (t.l) {
            level["l"] = *t.l;
        }
        levels.push_back(level);
    }
    return {{"query", q.describe()}, {"expected_tau", r.value}, {"per_level", levels}};
}

AlgorithmKind parse_algorithm(const std::string& word) {
    if (word == "1bs" || word == "kbs") {
        return AlgorithmKind::KBitSwap;
    }
    if (word == "rls") {
        return AlgorithmKind::Rls;
    }
    throw ConfigError("unknown algorithm '" + word + "' (expected 1bs or rls)");
}

InitPolicy parse_init(const std::string& word) {
    if (word == "random") {
        return InitPolicy::RandomUniform;
    }
    if (word == "half") {
        return InitPolicy::HalfOnes;
    }
    if (word == "half-block") {
        return InitPolicy::HalfOnesPerBlock;
    }
    throw ConfigError("unknown init policy '" + word + "' (expected random, half or half-block)");
}

ElitePolicy parse_elites(const std::string& word) {
    if (word == "keep") {
        return ElitePolicy::Keep;
    }
    if (word == "turnover") {
        return ElitePolicy::Turnover;
    }
    throw ConfigError("unknown elite policy '" + word + "' (expected keep or turnover)");
}

ReplacePolicy parse_replace(const std::string& word) {
    if (word == "ranked") {
        return ReplacePolicy::Ranked;
    }
    if (word == "clone-best") {
        return ReplacePolicy::CloneBest;
    }
    throw ConfigError("unknown replacement policy '" + word + "' (expected ranked or clone-best)");
}

theory::EliteDistribution parse_distribution(const std::string& word) {
    if (word == "uniform") {
        return theory::EliteDistribution::Uniform;
    }
    if (word == "poisson1") {
        return theory::EliteDistribution::Poisson1;
    }
    throw ConfigError("unknown elite distribution '" + word + "' (expected uniform or poisson1)");
}

theory::RrFlipVariant parse_rr_flip(const std::string& word) {
    if (word == "full") {
        return theory::RrFlipVariant::FullRate;
    }
    if (word == "half") {
        return theory::RrFlipVariant::HalfRate;
    }
    throw ConfigError("unknown rr-flip variant '" + word + "' (expected full or half)");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            continue;
        }
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("expected an integer, got '" + item + "'");
        }
        if (used != item.size()) {
            throw ConfigError("expected an integer, got '" + item + "'");
        }
        out.push_back(value);
    }
    return out;
}

namespace {

// Section view with value trimming, inline ';' / '#' comment stripping and
// rejection of keys the caller never asked for.
class Section {
  public:
    Section(const pt::ptree* tree, std::string name) : name_(std::move(name)) {
        if (tree == nullptr) {
            return;
        }
        for (const auto& [key, node] : *tree) {
            std::string value = node.data();
            const auto comment = value.find_first_of(";#");
            if (comment != std::string::npos) {
                value.erase(comment);
            }
            values_[key] = trim(value);
        }
    }

    [[nodiscard]] bool present() const { return !values_.empty(); }

    std::optional<std::string> get(const std::string& key) {
        used_.insert(key);
        const auto it = values_.find(key);
        if (it == values_.end() || it->second.empty()) {
            return std::nullopt;
        }
        return it->second;
    }

    std::optional<int> get_int(const std::string& key) {
        const auto v = get(key);
        if (!v) {
            return std::nullopt;
        }
        const auto list = parse_int_list(*v);
        if (list.size() != 1) {
            throw ConfigError("[" + name_ + "] " + key + " expects one integer");
        }
        return list.front();
    }

    std::optional<std::uint64_t> get_u64(const std::string& key) {
        const auto v = get(key);
        if (!v) {
            return std::nullopt;
        }
        try {
            std::size_t used = 0;
            const auto value = std::stoull(*v, &used);
            if (used == v->size()) {
                return value;
            }
        } catch (const std::exception&) {
        }
        throw ConfigError("[" + name_ + "] " + key + " expects an unsigned integer");
    }

    void reject_unknown() const {
        for (const auto& [key, value] : values_) {
            if (!used_.contains(key)) {
                throw ConfigError("unknown key '" + key + "' in [" + name_ + "]");
            }
        }
    }

  private:
    std::string name_;
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

pt::ptree read_ini(std::istream& in) {
    pt::ptree tree;
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed experiment file: ") + e.what());
    }
    return tree;
}

Section section(const pt::ptree& tree, const std::string& name) {
    const auto child = tree.get_child_optional(name);
    return Section(child ? &*child : nullptr, name);
}

void reject_unknown_sections(const pt::ptree& tree, std::initializer_list<const char*> allowed) {
    for (const auto& [name, node] : tree) {
        bool ok = false;
        for (const char* a : allowed) {
            ok = ok || name == a;
        }
        if (!ok || node.data().size() != 0) {
            throw ConfigError("unexpected section or top-level key '" + name + "'");
        }
    }
}

void apply_run_keys(Section& s, harness::RunOptions& run) {
    if (const auto v = s.get_int("replications")) {
        run.replications = *v;
    }
    if (const auto v = s.get_int("max_generations")) {
        run.max_generations = *v;
    }
    if (const auto v = s.get_u64("seed")) {
        run.seed = *v;
    }
    if (const auto v = s.get("init")) {
        run.init = parse_init(*v);
    }
    if (const auto v = s.get("replace")) {
        run.replace = parse_replace(*v);
    }
    if (const auto v = s.get("elites")) {
        run.elites = parse_elites(*v);
    }
    if (const auto v = s.get_int("threads")) {
        run.threads = static_cast<unsigned>(std::max(0, *v));
    }
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open '" + path + "'");
    }
    return in;
}

} // namespace

harness::ExperimentSpec parse_experiment(std::istream& in) {
    const auto tree = read_ini(in);
    reject_unknown_sections(tree, {"experiment", "ea", "theory"});

    harness::ExperimentSpec spec;
    auto exp = section(tree, "experiment");
    if (const auto v = exp.get("label")) {
        spec.label = *v;
    }
    if (const auto v = exp.get_int("replications")) {
        spec.replications = *v;
    }
    exp.reject_unknown();

    auto ea = section(tree, "ea");
    if (!ea.present()) {
        throw ConfigError("experiment file needs an [ea] section");
    }
    EAConfig& c = spec.ea;
    const auto alg = parse_algorithm(ea.get("algorithm").value_or("1bs"));
    c.algorithm = alg == AlgorithmKind::Rls ? Algorithm::rls() : Algorithm::bit_swap(ea.get_int("swaps").value_or(1));
    const std::string fitness = ea.get("fitness").value_or("onemax");
    if (fitness == "rr") {
        const auto k = ea.get_int("K");
        const auto m = ea.get_int("M");
        if (!k || !m) {
            throw ConfigError("Royal Roads needs K and M");
        }
        c.fitness = FitnessKind::royal_roads(*k, *m);
        c.n = ea.get_int("n").value_or(*k * *m);
    } else if (fitness == "onemax") {
        c.fitness = FitnessKind::one_max();
        const auto n = ea.get_int("n");
        if (!n) {
            throw ConfigError("OneMax needs n");
        }
        c.n = *n;
    } else {
        throw ConfigError("unknown fitness '" + fitness + "' (expected onemax or rr)");
    }
    c.mu = ea.get_int("mu").value_or(c.mu);
    c.lambda = ea.get_int("lambda").value_or(c.lambda);
    if (const auto v = ea.get("init")) {
        c.init = parse_init(*v);
    }
    if (const auto v = ea.get("replace")) {
        c.replace = parse_replace(*v);
    }
    if (const auto v = ea.get("elites")) {
        c.elites = parse_elites(*v);
    }
    c.max_generations = ea.get_int("max_generations").value_or(c.max_generations);
    c.seed = ea.get_u64("seed").value_or(c.seed);
    ea.reject_unknown();

    if (tree.get_child_optional("theory")) {
        auto th = section(tree, "theory");
        auto q = harness::matching_query(c);
        if (!q) {
            throw UnsupportedQuery("theory is only available for k = 1 swaps");
        }
        if (const auto v = th.get("distribution")) {
            q->distribution = parse_distribution(*v);
        }
        if (const auto v = th.get("rr_flip")) {
            q->rr_flip = parse_rr_flip(*v);
        }
        th.reject_unknown();
        spec.theory = q;
    }
    spec.validate();
    return spec;
}

harness::ExperimentSpec load_experiment(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_experiment(in);
}

harness::SweepGrid parse_sweep(std::istream& in) {
    const auto tree = read_ini(in);
    reject_unknown_sections(tree, {"sweep", "run"});

    harness::SweepGrid grid;
    auto sw = section(tree, "sweep");
    if (!sw.present()) {
        throw ConfigError("sweep file needs a [sweep] section");
    }
    {
        std::istringstream algs(sw.get("algorithm").value_or("1bs"));
        std::string word;
        while (std::getline(algs, word, ',')) {
            if (!trim(word).empty()) {
                grid.algorithms.push_back(parse_algorithm(trim(word)));
            }
        }
    }
    const std::string fitness = sw.get("fitness").value_or("onemax");
    if (fitness != "onemax" && fitness != "rr") {
        throw ConfigError("unknown fitness '" + fitness + "' (expected onemax or rr)");
    }
    grid.royal_roads = fitness == "rr";
    if (grid.royal_roads) {
        grid.blocks = parse_int_list(sw.get("K").value_or(""));
        grid.block_lengths = parse_int_list(sw.get("M").value_or(""));
    } else {
        grid.ns = parse_int_list(sw.get("n").value_or(""));
    }
    grid.mus = parse_int_list(sw.get("mu").value_or(""));
    const std::string lambda = sw.get("lambda").value_or("mu");
    if (lambda != "mu") {
        grid.lambdas = parse_int_list(lambda);
    }
    const std::string mode = sw.get("mode").value_or("theory");
    if (mode == "theory") {
        grid.mode = harness::SweepMode::Theory;
    } else if (mode == "simulate") {
        grid.mode = harness::SweepMode::Simulate;
    } else if (mode == "both") {
        grid.mode = harness::SweepMode::Both;
    } else {
        throw ConfigError("unknown sweep mode '" + mode + "' (expected theory, simulate or both)");
    }
    if (const auto v = sw.get("distribution")) {
        grid.distribution = parse_distribution(*v);
    }
    if (const auto v = sw.get("rr_flip")) {
        grid.rr_flip = parse_rr_flip(*v);
    }
    sw.reject_unknown();

    auto run = section(tree, "run");
    apply_run_keys(run, grid.run);
    run.reject_unknown();
    return grid;
}

harness::SweepGrid load_sweep(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_sweep(in);
}

} // namespace bitswap::io
