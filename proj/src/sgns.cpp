#include "wordgp/sgns.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wordgp/rng.hpp"
#include "wordgp/vec.hpp"

namespace wordgp {

void TrainerParams::validate() const {
    if (dim < 1) throw std::runtime_error("trainer dim must be at least 1");
    if (epochs < 1) throw std::runtime_error("trainer epochs must be at least 1");
    if (window < 1) throw std::runtime_error("trainer window must be at least 1");
    if (negatives < 1) throw std::runtime_error("trainer negatives must be at least 1");
    if (learning_rate <= 0.0) throw std::runtime_error("learning_rate must be positive");
    if (min_learning_rate <= 0.0 || min_learning_rate > learning_rate)
        throw std::runtime_error("min_learning_rate must be in (0, learning_rate]");
    if (workers < 1) throw std::runtime_error("workers must be at least 1");
}

namespace {

constexpr double kMaxExp = 6.0;  // |logit| clip, as in the usual trainers

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct VocabBuild {
    Vocabulary vocab;
    std::vector<std::size_t> counts;           // per vocab index
    std::vector<std::vector<std::uint32_t>> sentences;  // kept tokens only
    std::size_t kept_tokens = 0;
};

VocabBuild build_vocab(const std::vector<Headline>& corpus, std::size_t min_count) {
    struct Entry {
        std::size_t count = 0;
        std::size_t first_seen = 0;
    };
    std::unordered_map<std::string, Entry> tally;
    std::size_t running = 0;
    for (const auto& sentence : corpus) {
        for (const auto& token : sentence.tokens) {
            auto [it, inserted] = tally.try_emplace(token, Entry{0, running});
            ++it->second.count;
            ++running;
        }
    }

    // Order by frequency, ties by first occurrence, so the vocabulary (and
    // everything seeded off word indices) is reproducible.
    std::vector<const std::pair<const std::string, Entry>*> order;
    order.reserve(tally.size());
    for (const auto& kv : tally) {
        if (kv.second.count >= min_count) order.push_back(&kv);
    }
    std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
        if (a->second.count != b->second.count) return a->second.count > b->second.count;
        return a->second.first_seen < b->second.first_seen;
    });
    if (order.empty()) throw std::runtime_error("train_embedding: no token meets min_count");

    VocabBuild out;
    out.counts.reserve(order.size());
    for (const auto* kv : order) {
        out.vocab.add(kv->first);
        out.counts.push_back(kv->second.count);
    }
    out.sentences.reserve(corpus.size());
    for (const auto& sentence : corpus) {
        std::vector<std::uint32_t> ids;
        ids.reserve(sentence.tokens.size());
        for (const auto& token : sentence.tokens) {
            if (auto idx = out.vocab.find(token)) ids.push_back(static_cast<std::uint32_t>(*idx));
        }
        out.kept_tokens += ids.size();
        out.sentences.push_back(std::move(ids));
    }
    return out;
}

// Cumulative unigram^0.75 mass; sampling is a binary search over it.
std::vector<double> negative_cumulative(const std::vector<std::size_t>& counts) {
    std::vector<double> cum(counts.size());
    double total = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        total += std::pow(static_cast<double>(counts[i]), 0.75);
        cum[i] = total;
    }
    return cum;
}

std::uint32_t sample_negative(const std::vector<double>& cum, Rng& rng) {
    const double x = rng.uniform_real() * cum.back();
    const auto it = std::upper_bound(cum.begin(), cum.end(), x);
    const auto idx = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        it - cum.begin(), static_cast<std::ptrdiff_t>(cum.size()) - 1));
    return static_cast<std::uint32_t>(idx);
}

struct TrainState {
    std::size_t dim;
    std::vector<double> syn0;     // input vectors, row-major
    std::vector<double> syn1neg;  // output vectors, row-major
    const std::vector<double>* neg_cum;
    const TrainerParams* params;
};

// One sentence's worth of skip-gram updates. The rng is sentence-local, so
// the pairs and negatives drawn here do not depend on worker scheduling.
void train_sentence(TrainState& st, const std::vector<std::uint32_t>& sentence, double lr,
                    Rng& rng, std::vector<double>& grad_in) {
    const std::size_t dim = st.dim;
    const TrainerParams& p = *st.params;
    for (std::size_t center = 0; center < sentence.size(); ++center) {
        const std::size_t reach = 1 + rng.uniform_index(p.window);
        const std::uint32_t input = sentence[center];
        double* in_row = st.syn0.data() + static_cast<std::size_t>(input) * dim;
        for (std::size_t off = 1; off <= reach; ++off) {
            for (int side = 0; side < 2; ++side) {
                std::size_t context;
                if (side == 0) {
                    if (off > center) continue;
                    context = center - off;
                } else {
                    context = center + off;
                    if (context >= sentence.size()) continue;
                }
                const std::uint32_t positive = sentence[context];
                std::fill(grad_in.begin(), grad_in.end(), 0.0);
                // d == 0 is the positive example, the rest are noise draws.
                for (std::size_t d = 0; d <= p.negatives; ++d) {
                    std::uint32_t target;
                    double label;
                    if (d == 0) {
                        target = positive;
                        label = 1.0;
                    } else {
                        target = sample_negative(*st.neg_cum, rng);
                        if (target == positive) continue;
                        label = 0.0;
                    }
                    double* out_row = st.syn1neg.data() + static_cast<std::size_t>(target) * dim;
                    double logit = 0.0;
                    for (std::size_t c = 0; c < dim; ++c) logit += in_row[c] * out_row[c];
                    double g;
                    if (logit > kMaxExp) g = (label - 1.0) * lr;
                    else if (logit < -kMaxExp) g = label * lr;
                    else g = (label - sigmoid(logit)) * lr;
                    for (std::size_t c = 0; c < dim; ++c) grad_in[c] += g * out_row[c];
                    for (std::size_t c = 0; c < dim; ++c) out_row[c] += g * in_row[c];
                }
                for (std::size_t c = 0; c < dim; ++c) in_row[c] += grad_in[c];
            }
        }
    }
}

}  // namespace

LoadedEmbedding train_embedding(const std::vector<Headline>& corpus, const TrainerParams& params) {
    params.validate();
    if (corpus.empty()) throw std::runtime_error("train_embedding: empty corpus");

    VocabBuild build = build_vocab(corpus, std::max<std::size_t>(params.min_count, 1));
    const std::size_t vocab_size = build.vocab.size();
    const std::size_t dim = params.dim;

    TrainState st;
    st.dim = dim;
    st.syn0.resize(vocab_size * dim);
    st.syn1neg.assign(vocab_size * dim, 0.0);
    const std::vector<double> neg_cum = negative_cumulative(build.counts);
    st.neg_cum = &neg_cum;
    st.params = &params;

    // Input vectors start at small uniform noise, output vectors at zero.
    Rng init_rng(derive_seed(params.seed, 0));
    for (double& x : st.syn0)
        x = (init_rng.uniform_real() - 0.5) / static_cast<double>(dim);

    // The learning rate decays linearly with progress measured in tokens.
    // Progress is precomputed per sentence, so the rate schedule is identical
    // no matter how sentences are distributed over workers.
    std::vector<std::size_t> tokens_before(build.sentences.size());
    std::size_t prefix = 0;
    for (std::size_t s = 0; s < build.sentences.size(); ++s) {
        tokens_before[s] = prefix;
        prefix += build.sentences[s].size();
    }
    const double total_tokens =
        static_cast<double>(build.kept_tokens) * static_cast<double>(params.epochs) + 1.0;

    for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
        const std::size_t epoch_base = epoch * build.kept_tokens;
        const auto process = [&](std::size_t s, std::vector<double>& grad_in) {
            const auto& sentence = build.sentences[s];
            if (sentence.empty()) return;
            const double progress =
                static_cast<double>(epoch_base + tokens_before[s]) / total_tokens;
            const double lr =
                std::max(params.min_learning_rate, params.learning_rate * (1.0 - progress));
            Rng sentence_rng(derive_seed(params.seed, epoch + 1, s));
            train_sentence(st, sentence, lr, sentence_rng, grad_in);
        };
        if (params.workers == 1) {
            std::vector<double> grad_in(dim);
            for (std::size_t s = 0; s < build.sentences.size(); ++s) process(s, grad_in);
        } else {
#ifdef _OPENMP
            // Hogwild: workers update the shared matrices unsynchronized.
            // Throughput mode only; no determinism promise.
#pragma omp parallel num_threads(static_cast<int>(params.workers))
            {
                std::vector<double> grad_in(dim);
#pragma omp for schedule(static)
                for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(build.sentences.size());
                     ++s)
                    process(static_cast<std::size_t>(s), grad_in);
            }
#else
            std::vector<double> grad_in(dim);
            for (std::size_t s = 0; s < build.sentences.size(); ++s) process(s, grad_in);
#endif
        }
    }

    EmbeddingTable table(dim, vocab_size);
    for (std::size_t w = 0; w < vocab_size; ++w) {
        auto row = table.mutable_row(w);
        for (std::size_t c = 0; c < dim; ++c) row[c] = st.syn0[w * dim + c];
    }
    table.refresh_norms();

    LoadedEmbedding out;
    out.table = unit_normalize_all(std::move(table), build.vocab);
    out.vocab = std::move(build.vocab);
    return out;
}

}  // namespace wordgp
