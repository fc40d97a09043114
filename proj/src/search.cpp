#include "latbraid/search.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

namespace latbraid {

namespace fs = std::filesystem;
using nlohmann::json;

bool mode_b_accept(const Operation& prev, const Operation& next) {
    for (const auto& [e1, s1] : prev.gens)
        for (const auto& [e2, s2] : next.gens)
            if (e1 == e2) return false;
    return true;
}

namespace {

// Symmetry group elements as (edge permutation, orientation), closed under
// composition. Small models only; the closure is capped defensively.
struct GroupElem {
    std::vector<int> perm;
    int orient;
    bool operator<(const GroupElem& o) const { return std::tie(perm, orient) < std::tie(o.perm, o.orient); }
};

std::vector<GroupElem> symmetry_group(const LatticeModel& model) {
    const int n = model.triangulation().num_edges();
    GroupElem id;
    id.perm.resize(n);
    for (int i = 0; i < n; ++i) id.perm[i] = i;
    id.orient = +1;
    std::set<GroupElem> group{id};
    std::vector<GroupElem> gens;
    for (const SymmetryAction& s : model.symmetries()) gens.push_back({s.edge_perm, s.orientation});
    bool grew = true;
    while (grew && group.size() < 4096) {
        grew = false;
        std::vector<GroupElem> cur(group.begin(), group.end());
        for (const GroupElem& a : cur) {
            for (const GroupElem& g : gens) {
                GroupElem c;
                c.perm.resize(n);
                for (int i = 0; i < n; ++i) c.perm[i] = g.perm[a.perm[i]];
                c.orient = a.orient * g.orient;
                if (group.insert(c).second) grew = true;
            }
        }
    }
    return {group.begin(), group.end()};
}

Operation apply_group(const GroupElem& g, const Operation& op) {
    Operation out;
    for (const auto& [e, s] : op.gens) out.gens.push_back({g.perm[e], s * g.orient});
    std::sort(out.gens.begin(), out.gens.end());
    return out;
}

struct Candidate {
    std::vector<int> word;
    double score;
};

BraidWord to_word(const LatticeModel& model, const std::vector<int>& idx) {
    BraidWord w;
    for (int i : idx) w.ops.push_back(model.operations()[i]);
    return w;
}

}  // namespace

std::vector<int> canonical_first_ops(const LatticeModel& model) {
    const auto& ops = model.operations();
    const auto group = symmetry_group(model);
    std::map<Operation, int> index;
    for (int i = 0; i < (int)ops.size(); ++i) index[ops[i]] = i;
    std::vector<int> rep;
    std::vector<bool> seen(ops.size(), false);
    for (int i = 0; i < (int)ops.size(); ++i) {
        if (seen[i]) continue;
        rep.push_back(i);
        for (const GroupElem& g : group) {
            auto it = index.find(apply_group(g, ops[i]));
            if (it != index.end()) seen[it->second] = true;
        }
    }
    return rep;
}

SearchResult search_max_tepo(const SearchConfig& config) {
    return search_max_tepo(builtin_model(config.model), config);
}

SearchResult search_max_tepo(const LatticeModel& model, const SearchConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& ops = model.operations();
    const int n_ops = static_cast<int>(ops.size());
    const int k = config.length;
    if (k < 1) throw std::invalid_argument("search: word length must be >= 1");

    std::vector<int> firsts;
    if (config.restrict_first) firsts = canonical_first_ops(model);
    else {
        firsts.resize(n_ops);
        for (int i = 0; i < n_ops; ++i) firsts[i] = i;
    }

    // mode-B adjacency table
    std::vector<char> compat((size_t)n_ops * n_ops, 1);
    if (config.mode == SearchMode::B)
        for (int i = 0; i < n_ops; ++i)
            for (int j = 0; j < n_ops; ++j)
                compat[(size_t)i * n_ops + j] = mode_b_accept(ops[i], ops[j]) ? 1 : 0;

    // tasks: (first, second) prefixes so shards stay balanced; plain firsts for k == 1
    struct Task { std::vector<int> prefix; };
    std::vector<Task> tasks;
    for (int f : firsts) {
        if (k == 1) tasks.push_back({{f}});
        else {
            for (int s = 0; s < n_ops; ++s) {
                if (config.mode == SearchMode::B && !compat[(size_t)f * n_ops + s]) continue;
                tasks.push_back({{f, s}});
            }
        }
    }

    // resume from checkpoints
    std::vector<char> done(tasks.size(), 0);
    std::mutex merge_mu;
    std::vector<Candidate> candidates;
    unsigned long long preloaded_evals = 0;
    const int shards = std::max(1, config.shards);
    if (!config.checkpoint_dir.empty()) {
        fs::create_directories(config.checkpoint_dir);
        for (int s = 0; s < shards; ++s) {
            const fs::path p = fs::path(config.checkpoint_dir) /
                               ("shard_" + std::to_string(s) + ".json");
            std::ifstream in(p);
            if (!in) continue;
            json j;
            try { in >> j; } catch (...) {
                throw std::runtime_error("corrupt checkpoint: " + p.string());
            }
            for (int t : j.value("done_tasks", std::vector<int>{}))
                if (t >= 0 && t < (int)tasks.size()) done[t] = 1;
            for (const auto& jc : j.value("candidates", json::array()))
                candidates.push_back({jc.at("word").get<std::vector<int>>(),
                                      jc.at("score").get<double>()});
            preloaded_evals += j.value("words_evaluated", 0ull);
        }
    }

    TepoOptions phase1;
    phase1.tol = config.two_pass ? config.coarse_tol : config.tol;
    phase1.max_iter = config.two_pass ? config.coarse_max_iter : config.max_iter;
    const double margin = config.two_pass ? config.coarse_margin : 1e-8;
    const Vec<double> init = default_initial_coords(model);

    std::atomic<size_t> next_task{0};
    std::atomic<unsigned long long> evals{preloaded_evals};
    std::atomic<long long> best_milli{-1000000000};  // coarse max * 1e9, monotone

    auto worker = [&](int shard_id) {
        std::vector<Candidate> local;
        std::vector<int> local_done;
        std::vector<int> word(k);
        Vec<double> scratch;
        unsigned long long local_evals = 0;

        auto flush = [&]() {
            if (config.checkpoint_dir.empty()) return;
            json j;
            {
                std::lock_guard<std::mutex> lock(merge_mu);
                // merge-local into global now so checkpoints restart cleanly
            }
            json jc = json::array();
            for (const Candidate& c : local)
                jc.push_back({{"word", c.word}, {"score", c.score}});
            j["done_tasks"] = local_done;
            j["candidates"] = std::move(jc);
            j["words_evaluated"] = local_evals;
            const fs::path p = fs::path(config.checkpoint_dir) /
                               ("shard_" + std::to_string(shard_id) + ".json");
            const fs::path tmp = p.string() + ".tmp";
            std::ofstream out(tmp);
            out << j.dump();
            out.close();
            fs::rename(tmp, p);
        };

        std::function<void(int)> dfs = [&](int pos) {
            if (pos == k) {
                BraidWord w = to_word(model, word);
                const TepoReport rep = tepo(model, w, init, phase1);
                ++local_evals;
                const double score = rep.tepo;
                const long long milli = (long long)(score * 1e9);
                long long cur = best_milli.load(std::memory_order_relaxed);
                while (milli > cur &&
                       !best_milli.compare_exchange_weak(cur, milli, std::memory_order_relaxed)) {}
                if (score >= (double)best_milli.load(std::memory_order_relaxed) / 1e9 - margin)
                    local.push_back({word, score});
                return;
            }
            for (int i = 0; i < n_ops; ++i) {
                if (config.mode == SearchMode::B &&
                    !compat[(size_t)word[pos - 1] * n_ops + i]) continue;
                word[pos] = i;
                dfs(pos + 1);
            }
        };

        for (;;) {
            const size_t t = next_task.fetch_add(1);
            if (t >= tasks.size()) break;
            if (done[t]) continue;
            const Task& task = tasks[t];
            for (size_t i = 0; i < task.prefix.size(); ++i) word[i] = task.prefix[i];
            dfs(static_cast<int>(task.prefix.size()));
            local_done.push_back(static_cast<int>(t));
            // prune the local buffer against the improving global max
            const double cutoff = (double)best_milli.load(std::memory_order_relaxed) / 1e9 - margin;
            local.erase(std::remove_if(local.begin(), local.end(),
                                       [&](const Candidate& c) { return c.score < cutoff; }),
                        local.end());
            if (!config.checkpoint_dir.empty() && local_done.size() % 16 == 0) flush();
        }
        flush();
        evals += local_evals;
        std::lock_guard<std::mutex> lock(merge_mu);
        candidates.insert(candidates.end(), local.begin(), local.end());
    };

    std::vector<std::thread> pool;
    for (int s = 0; s < shards; ++s) pool.emplace_back(worker, s);
    for (auto& th : pool) th.join();

    // refinement: exact-tolerance evaluation of surviving candidates
    const double coarse_best = (double)best_milli.load() / 1e9;
    TepoOptions full;
    full.tol = config.tol;
    full.max_iter = config.max_iter;
    SearchResult res;
    res.first_op_classes = static_cast<int>(firsts.size());
    std::vector<std::pair<double, std::vector<int>>> refined;
    for (const Candidate& c : candidates) {
        if (c.score < coarse_best - margin) continue;
        const TepoReport rep = tepo(model, to_word(model, c.word), init, full);
        refined.push_back({rep.tepo, c.word});
    }
    double best = -1.0;
    for (const auto& [h, w] : refined) best = std::max(best, h);

    // re-verify reported maxima at 10x tighter tolerance
    TepoOptions verify = full;
    verify.tol = config.tol / 10;
    verify.max_iter = config.max_iter * 2;
    std::set<std::vector<int>> maxset;
    double vbest = -1.0;
    for (const auto& [h, w] : refined)
        if (h >= best - res.tie_tol) {
            const TepoReport rep = tepo(model, to_word(model, w), init, verify);
            vbest = std::max(vbest, rep.tepo);
        }
    for (const auto& [h, w] : refined)
        if (h >= best - res.tie_tol) {
            const TepoReport rep = tepo(model, to_word(model, w), init, verify);
            if (rep.tepo >= vbest - res.tie_tol) maxset.insert(w);
        }

    res.max_tepo = vbest;
    for (const auto& w : maxset) res.maximizers.push_back(to_word(model, w));
    std::sort(res.maximizers.begin(), res.maximizers.end());
    res.words_evaluated = evals.load();
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace latbraid
