#pragma once

// Command-line front end. `run` is kept separate from main() so tests can drive it in-process.

#include "sealscript/sealscript.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace sealscript::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string inventory_path;
    std::vector<std::string> corpus_paths;
    std::string grammar_path;
    std::uint64_t seed = 0;
    std::string output = "-";

    std::size_t n_max = 6;
    std::string estimator = "plugin";
    std::string normalization = "per-symbol";
    std::optional<std::size_t> alphabet_size;
    bool svg = false;

    double alpha = 0.0;
    std::size_t order = 2;
    std::string group_by = "inscription";
    std::string seal_id;
    std::size_t count = 1;
};

namespace detail {

/// Writes through a sibling temp file and renames, so a failed run leaves nothing half-written.
inline void write_atomically(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot write '" + tmp.string() + "'");
        f << content;
        f.flush();
        if (!f) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("cannot write '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path.string() + "'");
    }
}

inline void require_file(const std::string& flag, const std::string& path) {
    if (path.empty()) throw UsageError(flag + " is required");
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) throw IoError("cannot read " + flag + " file '" + path + "'");
}

/// Inventory of every code seen in the corpora, all tagged OTHER. Used when entropy is
/// run without --inventory; malformed lines are left for the corpus loader to report.
inline SignInventory infer_inventory(const std::vector<std::string>& paths) {
    std::set<std::uint32_t> codes;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open corpus file '" + path + "'");
        sealscript::detail::for_each_record(in, [&](std::size_t, std::string_view line) {
            const auto fields = sealscript::detail::split(line, '\t');
            if (fields.size() != 5) return;
            for (auto tok : sealscript::detail::split_words(sealscript::detail::trim(fields[4])))
                if (auto c = sealscript::detail::parse_int<std::uint32_t>(tok); c && *c > 0) codes.insert(*c);
        });
    }
    SignInventory inv("<inferred>");
    for (auto c : codes) inv.add(Sign{SignCode{c}, {SignClass::Other}, std::nullopt, std::nullopt, ""});
    return inv;
}

inline std::uint64_t default_seed() {
    const char* env = std::getenv("SEALSCRIPT_SEED");
    if (env == nullptr || *env == '\0') return 0;
    auto v = sealscript::detail::parse_int<std::uint64_t>(env);
    if (!v) throw UsageError("SEALSCRIPT_SEED must be a non-negative integer, got '" + std::string(env) + "'");
    return *v;
}

}  // namespace detail

class Runner {
public:
    Runner(RunConfig cfg, std::ostream& out, std::ostream& err) : cfg_(std::move(cfg)), out_(out), err_(err) {}

    int dispatch(const std::string& command) {
        if (command == "validate") validate();
        else if (command == "summary") summary();
        else if (command == "classify") classify(false);
        else if (command == "segment") classify(true);
        else if (command == "entropy") entropy();
        else if (command == "bigram") bigram();
        else if (command == "ngrams") ngrams();
        else if (command == "clusters") clusters();
        else if (command == "rations") rations();
        else if (command == "mint") mint();
        else if (command == "generate") generate_corpus();
        else throw UsageError("unknown subcommand '" + command + "'");
        flush();
        return kExitOk;
    }

private:
    const std::string& single_corpus() const {
        if (cfg_.corpus_paths.size() != 1) throw UsageError("exactly one --corpus is required");
        return cfg_.corpus_paths.front();
    }

    SignInventory inventory() const {
        detail::require_file("--inventory", cfg_.inventory_path);
        return load_inventory(cfg_.inventory_path);
    }

    Corpus corpus(const SignInventory& inv) const {
        const auto& path = single_corpus();
        detail::require_file("--corpus", path);
        return load_corpus(path, inv);
    }

    GrammarSpec grammar(const SignInventory& inv) const {
        detail::require_file("--grammar", cfg_.grammar_path);
        auto g = load_grammar(cfg_.grammar_path, inv);
        for (const auto& w : g.warnings) err_ << "warning: " << cfg_.grammar_path << ": " << w << '\n';
        return g;
    }

    /// Queues an output; nothing touches the filesystem until every result is computed.
    void emit(const std::string& file_name, std::string content) { pending_.emplace_back(file_name, std::move(content)); }

    void flush() {
        if (cfg_.output == "-") {
            for (const auto& [_, content] : pending_) out_ << content;
            out_.flush();
            return;
        }
        std::error_code ec;
        std::filesystem::create_directories(cfg_.output, ec);
        if (ec) throw IoError("cannot create output directory '" + cfg_.output + "'");
        for (const auto& [name, content] : pending_) {
            detail::write_atomically(std::filesystem::path(cfg_.output) / name, content);
            err_ << "wrote " << (std::filesystem::path(cfg_.output) / name).string() << '\n';
        }
    }

    void validate() {
        const auto inv = inventory();
        std::string csv = "file,kind,records\n";
        csv += sealscript::detail::csv_field(cfg_.inventory_path) + ",inventory," + std::to_string(inv.size()) + "\n";
        for (const auto& path : cfg_.corpus_paths) {
            detail::require_file("--corpus", path);
            const auto c = load_corpus(path, inv);
            csv += sealscript::detail::csv_field(path) + ",corpus," + std::to_string(c.size()) + "\n";
        }
        if (!cfg_.grammar_path.empty()) {
            const auto g = grammar(inv);
            const auto rules = g.prefix.size() + g.fish.size() + g.oval.size() + g.measure.size() + g.core.size() +
                               g.terminal.size();
            csv += sealscript::detail::csv_field(cfg_.grammar_path) + ",grammar," + std::to_string(rules) + "\n";
        }
        err_ << "validation passed: inventory of " << inv.size() << " signs\n";
        emit("validate.csv", std::move(csv));
    }

    void summary() {
        const auto inv = inventory();
        const auto s = corpus_summary(corpus(inv));
        err_ << s.inscriptions << " inscriptions, " << s.tokens << " tokens, " << s.frequency.size()
             << " distinct signs of " << inv.size() << '\n';
        emit("summary.csv", summary_csv(s));
    }

    void classify(bool with_segments) {
        const auto inv = inventory();
        const auto g = grammar(inv);
        const auto cc = classify_corpus(corpus(inv), g);
        err_ << "patterned: " << cc.patterned << ", complex: " << cc.complex << '\n';
        if (with_segments) emit("segment.csv", segment_csv(cc));
        else emit("classify.csv", classify_csv(cc));
    }

    void entropy() {
        if (cfg_.corpus_paths.empty()) throw UsageError("--corpus is required");
        if (cfg_.svg && cfg_.output == "-") throw UsageError("--svg needs an output directory (-o DIR)");
        if (cfg_.alphabet_size && *cfg_.alphabet_size < 2) throw UsageError("--alphabet-size must be >= 2");
        for (const auto& p : cfg_.corpus_paths) detail::require_file("--corpus", p);

        SignInventory inv;
        if (cfg_.inventory_path.empty()) {
            inv = detail::infer_inventory(cfg_.corpus_paths);
            err_ << "note: no --inventory; alphabet inferred from corpus (" << inv.size() << " signs)\n";
        } else {
            inv = inventory();
        }
        std::size_t L = cfg_.alphabet_size.value_or(inv.size());
        if (L < 2) {
            err_ << "note: alphabet of " << L << " sign(s); using L = 2 as the log base\n";
            L = 2;
        }
        const auto est = cfg_.estimator == "plugin" ? Estimator::Plugin : Estimator::MillerMadow;
        const auto norm = cfg_.normalization == "raw" ? Normalization::Raw : Normalization::PerSymbol;

        std::vector<NamedProfile> profiles;
        for (const auto& path : cfg_.corpus_paths) {
            const auto c = load_corpus(path, inv);
            if (c.empty()) throw ValidationError(path, 0, "", std::nullopt, "corpus has no inscriptions");
            profiles.push_back({std::filesystem::path(path).stem().string(), block_entropy(c, cfg_.n_max, est, norm, L)});
        }

        if (profiles.size() == 1) {
            emit("entropy.csv", entropy_csv(profiles.front().profile));
        } else if (cfg_.output == "-") {
            std::string all;
            for (const auto& p : profiles) all += "# corpus: " + p.name + "\n" + entropy_csv(p.profile);
            emit("entropy.csv", std::move(all));
        } else {
            for (const auto& p : profiles) emit("entropy-" + p.name + ".csv", entropy_csv(p.profile));
        }
        if (cfg_.svg) emit("entropy.svg", entropy_svg(profiles));
        err_ << "entropy over block sizes 1.." << cfg_.n_max << " for " << profiles.size() << " corpus/corpora, L = "
             << L << '\n';
    }

    void bigram() {
        if (cfg_.alpha < 0) throw UsageError("--alpha must be >= 0");
        const auto inv = inventory();
        const auto c = corpus(inv);
        if (c.empty()) throw ValidationError(single_corpus(), 0, "", std::nullopt, "corpus has no inscriptions");
        const auto m = fit_bigram(c, inv, cfg_.alpha);
        err_ << "bigram model over " << inv.size() << " signs, alpha = " << cfg_.alpha << '\n';
        emit("bigram.csv", bigram_csv(m));
    }

    void ngrams() {
        if (cfg_.order < 1) throw UsageError("--order must be >= 1");
        const auto inv = inventory();
        const auto t = ngram_counts(corpus(inv), cfg_.order);
        err_ << t.counts.size() << " distinct " << cfg_.order << "-grams, " << t.total << " windows\n";
        emit("ngrams.csv", ngram_csv(t));
    }

    void clusters() {
        const auto inv = inventory();
        const auto mode = cfg_.group_by == "sides" ? GroupBy::ArtifactSides : GroupBy::SingleInscription;
        const auto cl = find_duplicate_clusters(corpus(inv), mode);
        err_ << cl.size() << " duplicate cluster(s)\n";
        for (const auto& c : cl)
            if (c.co_located)
                err_ << "  cluster of " << c.size << " [" << signature_text(c) << "] shares one find site\n";
        emit("clusters.csv", clusters_csv(cl));
    }

    void rations() {
        const auto inv = inventory();
        const auto g = grammar(inv);
        const auto t = tabulate_rations(corpus(inv), g, inv);
        err_ << t.tabulated << " quantities tabulated; skipped " << t.skipped_complex << " complex and "
             << t.skipped_no_quantity << " quantity-free text(s)\n";
        emit("rations.csv", rations_csv(t));
    }

    void mint() {
        if (cfg_.seal_id.empty()) throw UsageError("--seal is required");
        if (cfg_.count < 1) throw UsageError("--count must be >= 1");
        const auto inv = inventory();
        const auto c = corpus(inv);
        const auto it = std::find_if(c.inscriptions.begin(), c.inscriptions.end(),
                                     [&](const Inscription& i) { return i.id == cfg_.seal_id; });
        if (it == c.inscriptions.end())
            throw ValidationError(single_corpus(), 0, cfg_.seal_id, std::nullopt, "no such inscription");
        if (it->object_type != ObjectType::Seal)
            throw ValidationError(single_corpus(), 0, cfg_.seal_id, std::nullopt,
                                  "object is a " + std::string(to_string(it->object_type)) + ", not a seal");
        const auto tokens = mint_tokens(*it, cfg_.count, cfg_.seed);
        err_ << "minted " << tokens.size() << " token(s) from seal " << cfg_.seal_id << '\n';
        emit("mint.csv", tokens_csv(tokens));
    }

    void generate_corpus() {
        const auto inv = inventory();
        const auto g = grammar(inv);
        Corpus c;
        c.inscriptions = generate(g, cfg_.seed, cfg_.count);
        std::ostringstream out;
        out << "# id\tobject_type\tsite\tsource_direction\tsigns\n";
        write_corpus(out, c);
        err_ << "generated " << c.size() << " inscription(s) with seed " << cfg_.seed << '\n';
        emit("generated.tsv", out.str());
    }

    RunConfig cfg_;
    std::ostream& out_;
    std::ostream& err_;
    std::vector<std::pair<std::string, std::string>> pending_;
};

/// Runs one subcommand. Exit codes: 0 success, 1 invalid input, 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg.seed = detail::default_seed();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    CLI::App app{"Corpus tooling for short symbolic inscriptions: grammar segmentation, n-gram statistics, "
                 "block entropy and ration readings.",
                 "sealscript"};
    app.require_subcommand(1);

    auto add_inventory = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--inventory", cfg.inventory_path, "Sign inventory TSV");
        if (required) o->required();
    };
    auto add_corpus = [&](CLI::App* sub, bool many) {
        auto* o = sub->add_option("--corpus", cfg.corpus_paths, "Corpus TSV")->required();
        if (!many) o->expected(1);
    };
    auto add_grammar = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--grammar", cfg.grammar_path, "Grammar file");
        if (required) o->required();
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("-o,--output", cfg.output, "Output directory, or '-' for stdout")->capture_default_str();
    };
    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "Random seed (default: $SEALSCRIPT_SEED or 0)");
    };

    auto* validate = app.add_subcommand("validate", "Load and check inventory, corpora and grammar");
    add_inventory(validate, true);
    validate->add_option("--corpus", cfg.corpus_paths, "Corpus TSV");
    add_grammar(validate, false);
    add_output(validate);

    auto* summary = app.add_subcommand("summary", "Sign frequencies, length histogram, object types");
    add_inventory(summary, true);
    add_corpus(summary, false);
    add_output(summary);

    for (const char* name : {"classify", "segment"}) {
        auto* sub = app.add_subcommand(name, std::string(name) == "classify"
                                                 ? "Patterned/Complex verdict per inscription"
                                                 : "Prefix/Medial/Core/Terminal spans with roles");
        add_inventory(sub, true);
        add_grammar(sub, true);
        add_corpus(sub, false);
        add_output(sub);
    }

    auto* entropy = app.add_subcommand("entropy", "Block entropy by block size, log base L");
    add_inventory(entropy, false);
    add_corpus(entropy, true);
    entropy->add_option("--n-max", cfg.n_max, "Largest block size")->check(CLI::Range(1, 64))->capture_default_str();
    entropy->add_option("--estimator", cfg.estimator)->check(CLI::IsMember({"plugin", "miller-madow"}))->capture_default_str();
    entropy->add_option("--normalization", cfg.normalization)->check(CLI::IsMember({"per-symbol", "raw"}))->capture_default_str();
    entropy->add_option("--alphabet-size", cfg.alphabet_size, "Log base L (default: inventory size)");
    entropy->add_flag("--svg", cfg.svg, "Also write entropy.svg");
    add_output(entropy);

    auto* bigram = app.add_subcommand("bigram", "Smoothed bigram transition table");
    add_inventory(bigram, true);
    add_corpus(bigram, false);
    bigram->add_option("--alpha", cfg.alpha, "Additive smoothing constant")->capture_default_str();
    add_output(bigram);

    auto* ngrams = app.add_subcommand("ngrams", "n-gram counts within inscriptions");
    add_inventory(ngrams, true);
    add_corpus(ngrams, false);
    ngrams->add_option("-n,--order", cfg.order, "Block length")->capture_default_str();
    add_output(ngrams);

    auto* clusters = app.add_subcommand("clusters", "Groups of identical inscriptions or artifacts");
    add_inventory(clusters, true);
    add_corpus(clusters, false);
    clusters->add_option("--group-by", cfg.group_by)->check(CLI::IsMember({"inscription", "sides"}))->capture_default_str();
    add_output(clusters);

    auto* rations = app.add_subcommand("rations", "Per-commodity totals of numeral x measure readings");
    add_inventory(rations, true);
    add_grammar(rations, true);
    add_corpus(rations, false);
    add_output(rations);

    auto* mint = app.add_subcommand("mint", "Stamp a batch of tokens from a seal");
    add_inventory(mint, true);
    add_corpus(mint, false);
    mint->add_option("--seal", cfg.seal_id, "Seal inscription id")->required();
    mint->add_option("--count", cfg.count, "Number of tokens")->capture_default_str();
    add_seed(mint);
    add_output(mint);

    auto* gen = app.add_subcommand("generate", "Sample patterned inscriptions from the grammar (corpus TSV)");
    add_inventory(gen, true);
    add_grammar(gen, true);
    gen->add_option("--count", cfg.count, "Number of inscriptions")->capture_default_str();
    add_seed(gen);
    add_output(gen);

    std::vector<const char*> argv{"sealscript"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return Runner(std::move(cfg), out, err).dispatch(command);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const ContractViolation& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}

}  // namespace sealscript::cli
