#include "shiftlab/experiments.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "shiftlab/constructions.hpp"
#include "shiftlab/ergopt.hpp"
#include "shiftlab/follower.hpp"
#include "shiftlab/measure.hpp"
#include "shiftlab/rng.hpp"

namespace shiftlab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config plumbing

std::string ExperimentConfig::serialize() const {
    json j;
    j["experiment"] = experiment;
    j["alpha"] = rat_to_string(alpha);
    j["seed"] = seed;
    j["out"] = out_dir;
    j["format"] = format;
    j["space"] = space_text.empty() ? json() : json::parse(space_text);
    j["function"] = function_text.empty() ? json() : json::parse(function_text);
    json params_json = json::object();
    for (const auto& [k, v] : params) params_json[k] = v;
    j["params"] = params_json;
    return j.dump(2);
}

ExperimentConfig ExperimentConfig::deserialize(const std::string& text) {
    json j = json::parse(text);
    ExperimentConfig c;
    c.experiment = j.at("experiment").get<std::string>();
    if (j.contains("alpha")) c.alpha = rat_from_string(j.at("alpha").get<std::string>());
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out") && !j.at("out").is_null()) c.out_dir = j.at("out").get<std::string>();
    if (j.contains("format")) c.format = j.at("format").get<std::string>();
    if (j.contains("space") && !j.at("space").is_null()) c.space_text = j.at("space").dump();
    if (j.contains("function") && !j.at("function").is_null())
        c.function_text = j.at("function").dump();
    if (j.contains("params"))
        for (const auto& [k, v] : j.at("params").items()) c.params[k] = v.get<std::string>();
    return c;
}

long long ExperimentConfig::param_int(const std::string& key, long long fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : std::stoll(it->second);
}

std::string ExperimentConfig::param_str(const std::string& key,
                                        const std::string& fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

namespace {

std::string csv_cell(const std::string& s) { return "\"" + s + "\""; }

// ---------------------------------------------------------------------------
// beta: maximum ergodic average against the exhaustive periodic oracle

ExperimentResult run_beta(const ExperimentConfig& config) {
    ExperimentResult result;
    ShiftSpace space =
        config.space_text.empty() ? make_golden_mean() : ShiftSpace::deserialize(config.space_text);
    const SftSpace* sft = as_sft(space);
    if (!sft) {
        result.exit_code = 2;
        result.summary = "beta requires a window-backed space";
        return result;
    }
    LocallyConstantFn f = config.function_text.empty()
                              ? LocallyConstantFn::indicator(space.alphabet(), "01")
                              : LocallyConstantFn::deserialize(config.function_text);
    CycleMeanResult exact = max_ergodic_average(*sft, f);
    DeBruijnGraph graph = DeBruijnGraph::build(*sft, f);
    int period_cap = static_cast<int>(
        config.param_int("max-period", static_cast<long long>(graph.vertices.size())));
    auto [oracle_beta, oracle_witness] = brute_force_beta(*sft, f, period_cap);
    bool agree = oracle_beta == exact.beta;

    std::ostringstream summary;
    summary << "beta=" << rat_to_string(exact.beta) << " witness=" << exact.witness
            << " oracle=" << (agree ? "agree" : "DISAGREE");
    result.summary = summary.str();
    result.exit_code = agree ? 0 : 1;

    std::ostringstream csv;
    csv << "\"beta\",\"witness\",\"oracle_beta\",\"oracle_witness\",\"agree\"\n";
    csv << csv_cell(rat_to_string(exact.beta)) << "," << csv_cell(exact.witness) << ","
        << csv_cell(rat_to_string(oracle_beta)) << "," << csv_cell(oracle_witness) << ","
        << csv_cell(agree ? "yes" : "no") << "\n";
    result.csv = csv.str();

    json j = json::parse(exact.serialize());
    j["oracle_beta"] = rat_to_string(oracle_beta);
    j["oracle_witness"] = oracle_witness;
    j["agree"] = agree;
    result.json_text = j.dump(2);
    return result;
}

// ---------------------------------------------------------------------------
// boundary: finite-horizon growth report plus the exact cross-check

ExperimentResult run_boundary(const ExperimentConfig& config) {
    ExperimentResult result;
    ShiftSpace space =
        config.space_text.empty() ? make_even_shift() : ShiftSpace::deserialize(config.space_text);
    int max_len = static_cast<int>(config.param_int("L", 4));
    bool parallel = config.param_str("parallel", "no") == "yes";
    Schedule schedule = Schedule::standard();
    BoundaryReport report = parallel ? boundary_estimate_parallel(space, max_len, schedule)
                                     : boundary_estimate(space, max_len, schedule);

    // A stored report can be replayed against the freshly computed one.
    std::string compare_to = config.param_str("compare-to", "");
    if (!compare_to.empty()) {
        std::ifstream in(compare_to);
        if (!in) {
            result.exit_code = 2;
            result.summary = "cannot read report: " + compare_to;
            return result;
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        BoundaryReport stored = BoundaryReport::deserialize(buffer.str());
        if (stored.serialize() != report.serialize()) {
            result.exit_code = 1;
            result.summary = "stored report differs from the recomputed one";
            result.json_text = report.serialize();
            return result;
        }
    }

    std::string cross = "unsupported";
    bool cross_ok = true;
    if (auto exact = boundary_exact(space)) {
        std::set<Word> expect;
        if (!exact->empty_space())
            for (Word& w : words_up_to_length(*exact, max_len)) expect.insert(std::move(w));
        std::set<Word> got(report.growing.begin(), report.growing.end());
        got.insert("");  // the empty word is in every non-empty factorial language
        expect.insert("");
        if (exact->empty_space()) {
            cross_ok = report.growing.empty();
            cross = cross_ok ? "empty boundary confirmed" : "MISMATCH (expected empty)";
        } else {
            cross_ok = got == expect;
            cross = cross_ok ? "matches exact boundary" : "MISMATCH against exact boundary";
        }
    }

    std::ostringstream summary;
    summary << "growing: " << report.growing.size() << " words; stabilized: "
            << report.stabilized.size() << "; cross-check: " << cross;
    result.summary = summary.str();
    result.exit_code = cross_ok ? 0 : 1;
    result.csv = report.to_csv();
    result.json_text = report.serialize();
    return result;
}

// ---------------------------------------------------------------------------
// locking

ExperimentResult run_locking(const ExperimentConfig& config) {
    ExperimentResult result;
    ShiftSpace space =
        config.space_text.empty() ? make_golden_mean() : ShiftSpace::deserialize(config.space_text);
    const SftSpace* sft = as_sft(space);
    if (!sft) {
        result.exit_code = 2;
        result.summary = "locking requires a window-backed space";
        return result;
    }
    LocallyConstantFn f = config.function_text.empty()
                              ? LocallyConstantFn::indicator(space.alphabet(), "01")
                              : LocallyConstantFn::deserialize(config.function_text);
    Rat eps = rat_from_string(config.param_str("eps", "1/4"));
    int depth = static_cast<int>(config.param_int("depth", 6));
    int samples = static_cast<int>(config.param_int("samples", 100));
    MetricParam p(config.alpha);
    Rng rng(config.seed);
    LockingReport report = locking_test(*sft, f, eps, depth, samples, p, rng);
    bool unlocked = unlock_demo(*sft, f, eps, depth, p);

    std::ostringstream summary;
    summary << "locked " << report.locked << "/" << report.samples
            << " inside the admissible ball; engineered unlock: " << (unlocked ? "yes" : "no");
    result.summary = summary.str();
    result.exit_code = report.locked == report.samples ? 0 : 1;

    std::ostringstream csv;
    csv << "\"samples\",\"locked\",\"fraction\",\"admissible_seminorm\",\"engineered_unlock\"\n";
    csv << csv_cell(std::to_string(report.samples)) << "," << csv_cell(std::to_string(report.locked))
        << "," << csv_cell(rat_to_string(report.fraction())) << ","
        << csv_cell(rat_to_string(report.admissible_seminorm)) << ","
        << csv_cell(unlocked ? "yes" : "no") << "\n";
    result.csv = csv.str();

    json j;
    j["samples"] = report.samples;
    j["locked"] = report.locked;
    j["fraction"] = rat_to_string(report.fraction());
    j["admissible_seminorm"] = rat_to_string(report.admissible_seminorm);
    j["engineered_unlock"] = unlocked;
    result.json_text = j.dump(2);
    return result;
}

// ---------------------------------------------------------------------------
// closing: random returns to the magic symbol

ExperimentResult run_closing(const ExperimentConfig& config) {
    ExperimentResult result;
    ShiftSpace magic = make_magic_morse();
    MetricParam p(config.alpha);
    Rng rng(config.seed);
    int count = static_cast<int>(config.param_int("count", 100));
    Rat bound = p.alpha / (1 - p.alpha);

    int violations = 0;
    Rat worst = 0;
    std::ostringstream csv;
    csv << "\"prefix\",\"return_time\",\"periodic_word\",\"distance_sum\",\"bound\"\n";
    json rows = json::array();
    for (int i = 0; i < count; ++i) {
        int blocks = static_cast<int>(rng.range(2, 5));
        Word prefix = "#";
        std::vector<int> magic_positions{0};
        for (int b = 0; b < blocks; ++b) {
            prefix += morse_word(static_cast<unsigned>(rng.range(0, 4)));
            magic_positions.push_back(static_cast<int>(prefix.size()));
            prefix += '#';
        }
        prefix += morse_word(static_cast<unsigned>(rng.range(0, 3)));
        int return_time =
            magic_positions[static_cast<std::size_t>(rng.range(1, blocks))];
        try {
            ClosedOrbit closed = close_orbit(magic, prefix, return_time, "#", p);
            if (closed.distance_sum > worst) worst = closed.distance_sum;
            csv << csv_cell(prefix) << "," << csv_cell(std::to_string(return_time)) << ","
                << csv_cell(closed.periodic_word) << ","
                << csv_cell(rat_to_string(closed.distance_sum)) << ","
                << csv_cell(rat_to_string(bound)) << "\n";
            json row;
            row["prefix"] = prefix;
            row["return_time"] = return_time;
            row["periodic_word"] = closed.periodic_word;
            row["distance_sum"] = rat_to_string(closed.distance_sum);
            rows.push_back(row);
        } catch (const std::exception& e) {
            ++violations;
            csv << csv_cell(prefix) << "," << csv_cell(std::to_string(return_time)) << ","
                << csv_cell("ERROR") << "," << csv_cell(e.what()) << ","
                << csv_cell(rat_to_string(bound)) << "\n";
        }
    }
    std::ostringstream summary;
    summary << "closed " << (count - violations) << "/" << count
            << " return words; max distance sum " << rat_to_string(worst) << " < "
            << rat_to_string(bound);
    result.summary = summary.str();
    result.exit_code = violations == 0 ? 0 : 1;
    result.csv = csv.str();
    json j;
    j["bound"] = rat_to_string(bound);
    j["max_distance_sum"] = rat_to_string(worst);
    j["violations"] = violations;
    j["rows"] = rows;
    result.json_text = j.dump(2);
    return result;
}

// ---------------------------------------------------------------------------
// morse-bounds

ExperimentResult run_morse_bounds(const ExperimentConfig& config) {
    ExperimentResult result;
    MetricParam p(config.alpha);
    int n_max = static_cast<int>(config.param_int("n-max", 5));
    EPSequence tail = EPSequence::periodic("0#");

    int failures = 0;
    std::ostringstream csv;
    csv << "\"kind\",\"n\",\"M\",\"W\",\"bound\",\"certified\"\n";
    json rows = json::array();
    for (int n = 1; n <= n_max; ++n) {
        for (int M : {1, 2, 4, 8}) {
            for (bool plus_one : {false, true}) {
                MorseBoundResult r = plus_one ? verify_plus_one_bound(n, M, tail, p)
                                              : verify_prefix_bound(n, M, tail, p);
                if (!r.certified) ++failures;
                std::string kind = plus_one ? "block+1" : "block";
                csv << csv_cell(kind) << "," << csv_cell(std::to_string(n)) << ","
                    << csv_cell(std::to_string(M)) << ","
                    << csv_cell(rat_to_string(r.wasserstein_value)) << ","
                    << csv_cell(rat_to_string(r.bound)) << ","
                    << csv_cell(r.certified ? "yes" : "no") << "\n";
                json row;
                row["kind"] = kind;
                row["n"] = n;
                row["M"] = M;
                row["W"] = rat_to_string(r.wasserstein_value);
                row["bound"] = rat_to_string(r.bound);
                row["certified"] = r.certified;
                rows.push_back(row);
            }
        }
    }
    std::ostringstream summary;
    summary << "certified " << rows.size() - failures << "/" << rows.size()
            << " empirical-window bounds";
    result.summary = summary.str();
    result.exit_code = failures == 0 ? 0 : 1;
    result.csv = csv.str();
    json j;
    j["rows"] = rows;
    j["failures"] = failures;
    result.json_text = j.dump(2);
    return result;
}

// ---------------------------------------------------------------------------
// non-tpo

ExperimentResult run_non_tpo(const ExperimentConfig& config) {
    ExperimentResult result;
    MetricParam p(config.alpha);
    Rng rng(config.seed);
    int measures = static_cast<int>(config.param_int("measures", 50));
    int phis = static_cast<int>(config.param_int("phis", 20));
    int n_scale = static_cast<int>(config.param_int("n-scale", 6));
    int M = static_cast<int>(config.param_int("M", 8));
    bool parallel = config.param_str("parallel", "no") == "yes";
    NonTpoReport report = verify_non_tpo_ball(measures, phis, n_scale, M, p, rng, parallel);

    auto approx = [](const Rat& r) {
        std::ostringstream out;
        out << std::setprecision(6) << r.convert_to<double>();
        return out.str();
    };
    std::ostringstream csv;
    csv << "\"u\",\"magic_count\",\"period\",\"phi_lip\",\"rho_distance_integral\",\"margin\","
           "\"margin_approx\",\"slack\",\"slack_approx\",\"strict\",\"conclusive\"\n";
    for (const auto& row : report.rows) {
        csv << csv_cell(row.periodic_word) << "," << csv_cell(std::to_string(row.magic_count))
            << "," << csv_cell(std::to_string(row.period)) << ","
            << csv_cell(rat_to_string(row.phi_seminorm)) << ","
            << csv_cell(rat_to_string(row.rho_distance_integral)) << ","
            << csv_cell(rat_to_string(row.margin)) << "," << csv_cell(approx(row.margin)) << ","
            << csv_cell(rat_to_string(row.slack)) << "," << csv_cell(approx(row.slack)) << ","
            << csv_cell(row.strict ? "yes" : "no") << ","
            << csv_cell(row.conclusive ? "yes" : "no") << "\n";
    }
    result.csv = csv.str();

    json j;
    j["n_scale"] = report.n_scale;
    j["lambda_len"] = report.lambda_len;
    j["ball_radius"] = rat_to_string(report.ball_radius);
    j["seminorm_cap"] = rat_to_string(report.seminorm_cap);
    j["violations"] = report.violations();
    j["inconclusive"] = report.inconclusive_count();
    j["rows"] = json::array();
    for (const auto& row : report.rows) {
        json r;
        r["u"] = row.periodic_word;
        r["margin"] = rat_to_string(row.margin);
        r["slack"] = rat_to_string(row.slack);
        r["strict"] = row.strict;
        r["conclusive"] = row.conclusive;
        j["rows"].push_back(r);
    }
    result.json_text = j.dump(2);

    std::ostringstream summary;
    summary << report.rows.size() << " samples; violations: " << report.violations()
            << "; inconclusive: " << report.inconclusive_count();
    result.summary = summary.str();
    result.exit_code = report.violations() == 0 ? 0 : 1;
    return result;
}

// ---------------------------------------------------------------------------
// eventual-sofic

ExperimentResult run_eventual_sofic(const ExperimentConfig& config) {
    ExperimentResult result;
    int max_level = static_cast<int>(config.param_int("max-level", 4));

    std::vector<std::pair<std::string, ShiftSpace>> spaces;
    if (config.space_text.empty()) {
        ShiftSpace even = make_even_shift();
        IntSet pow2 = IntSet::pow2();
        ShiftSpace once = length_constrained(even, pow2, '#');
        spaces.push_back({"even", even});
        spaces.push_back({"context-free", make_context_free_shift()});
        spaces.push_back({"s-gap(pow2)", make_s_gap_shift(pow2)});
        spaces.push_back({"interspersed even", once});
        spaces.push_back({"twice-interspersed even", length_constrained(once, pow2, '$')});
    } else {
        spaces.push_back({"input", ShiftSpace::deserialize(config.space_text)});
    }

    std::ostringstream csv;
    csv << "\"space\",\"level\",\"chain\",\"diagnostic\"\n";
    json rows = json::array();
    std::ostringstream summary;
    for (const auto& [name, space] : spaces) {
        EventualSoficResult r = eventual_sofic_level(space, max_level);
        std::string chain;
        for (std::size_t i = 0; i < r.chain.size(); ++i)
            chain += (i ? " -> " : "") + r.chain[i];
        csv << csv_cell(name) << ","
            << csv_cell(r.level ? std::to_string(*r.level) : "undecided") << ","
            << csv_cell(chain) << "," << csv_cell(r.diagnostic) << "\n";
        json row;
        row["space"] = name;
        if (r.level) row["level"] = *r.level;
        row["chain"] = chain;
        row["diagnostic"] = r.diagnostic;
        rows.push_back(row);
        if (summary.tellp() > 0) summary << "; ";
        summary << name << ": " << (r.level ? "level " + std::to_string(*r.level) : "undecided");
    }
    result.summary = summary.str();
    result.csv = csv.str();
    json j;
    j["rows"] = rows;
    result.json_text = j.dump(2);
    return result;
}

// ---------------------------------------------------------------------------
// mane-demo

ExperimentResult run_mane_demo(const ExperimentConfig& config) {
    ExperimentResult result;
    MetricParam p(config.alpha);
    int n_max = static_cast<int>(config.param_int("n-max", 8));
    ManeTranscript transcript = mane_obstruction_demo(n_max, p);

    bool ok = transcript.cover_beta == 0;
    for (const auto& row : transcript.rows) ok = ok && row.birkhoff == 1;

    std::ostringstream csv;
    csv << "\"n\",\"birkhoff_sum\",\"distance\"\n";
    for (const auto& row : transcript.rows)
        csv << csv_cell(std::to_string(row.n)) << "," << csv_cell(rat_to_string(row.birkhoff))
            << "," << csv_cell(rat_to_string(row.distance)) << "\n";
    result.csv = csv.str();

    json j;
    j["cover_beta"] = rat_to_string(transcript.cover_beta);
    j["lines"] = transcript.lines;
    result.json_text = j.dump(2);

    std::ostringstream summary;
    summary << "cover beta = " << rat_to_string(transcript.cover_beta)
            << "; one-letter sums stay at 1 while the anchor distance shrinks to "
            << rat_to_string(transcript.rows.empty() ? Rat(0) : transcript.rows.back().distance);
    result.summary = summary.str();
    result.exit_code = ok ? 0 : 1;
    return result;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    try {
        if (config.experiment == "beta") return run_beta(config);
        if (config.experiment == "boundary") return run_boundary(config);
        if (config.experiment == "locking") return run_locking(config);
        if (config.experiment == "closing") return run_closing(config);
        if (config.experiment == "morse-bounds") return run_morse_bounds(config);
        if (config.experiment == "non-tpo") return run_non_tpo(config);
        if (config.experiment == "eventual-sofic") return run_eventual_sofic(config);
        if (config.experiment == "mane-demo") return run_mane_demo(config);
    } catch (const std::exception& e) {
        ExperimentResult result;
        result.exit_code = 2;
        result.summary = std::string("error: ") + e.what();
        return result;
    }
    ExperimentResult result;
    result.exit_code = 2;
    result.summary = "unknown experiment: " + config.experiment;
    return result;
}

std::vector<std::string> write_artifacts(const ExperimentConfig& config,
                                         const ExperimentResult& result) {
    std::vector<std::string> written;
    if (config.out_dir.empty()) return written;
    std::filesystem::create_directories(config.out_dir);
    auto emit = [&](const std::string& ext, const std::string& body) {
        if (body.empty()) return;
        std::string path = config.out_dir + "/" + config.experiment + "." + ext;
        std::ofstream out(path, std::ios::binary);
        out << body;
        written.push_back(path);
    };
    if (config.format == "csv" || config.format == "both") emit("csv", result.csv);
    if (config.format == "json" || config.format == "both") emit("json", result.json_text);
    return written;
}

}  // namespace shiftlab
