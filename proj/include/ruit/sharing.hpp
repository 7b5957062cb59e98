#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "countermodel.hpp"
#include "errors.hpp"
#include "prover.hpp"

namespace ruit {

/// Rebuilds formulas bottom-up so that provably equivalent subformulas share
/// one representative. Candidates are found by their denotations over a fixed
/// battery of Kripke models with at most three worlds; every merge is
/// confirmed by the prover, so the output is always provably equivalent to
/// the input. Representatives are the first formula seen in each class.
class EquivalenceSharing {
public:
  static constexpr std::size_t kMaxModels = 4096;

  EquivalenceSharing(const std::vector<std::uint32_t>& vars, ProverOptions options)
      : vars_(vars), prover_(options) {
    build_battery();
  }

  Formula operator()(Formula f) {
    for (Formula g : topological_nodes({f})) {
      if (rep_.count(g.id())) continue;
      rep_.emplace(g.id(), share(g));
    }
    return rep_.at(f.id());
  }

  std::size_t classes() const { return fingerprint_.size(); }
  std::size_t models() const { return models_.size(); }

private:
  using Fingerprint = std::vector<std::uint8_t>;

  struct Model {
    std::uint8_t worlds;
    std::uint8_t up[3];
  };

  void build_battery() {
    std::vector<Model> frames;
    std::vector<std::vector<std::uint8_t>> frame_ups;
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& up : preorders(n)) {
        Model m{static_cast<std::uint8_t>(n), {0, 0, 0}};
        KripkeModel k;
        k.worlds = n;
        k.up = up;
        for (std::size_t w = 0; w < n; ++w) m.up[w] = static_cast<std::uint8_t>(up[w]);
        std::vector<std::uint8_t> ups;
        for (auto s : up_sets(k)) ups.push_back(static_cast<std::uint8_t>(s));
        frames.push_back(m);
        frame_ups.push_back(std::move(ups));
      }
    // Every (frame, valuation) pair in mixed radix, thinned evenly to kMaxModels.
    std::vector<std::uint64_t> offsets{0};
    for (const auto& ups : frame_ups) {
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < vars_.size() && count <= kMaxModels * 64; ++i) count *= ups.size();
      offsets.push_back(offsets.back() + count);
    }
    const std::uint64_t total = offsets.back();
    const std::uint64_t want = std::min<std::uint64_t>(total, kMaxModels);
    valuation_.assign(vars_.size(), {});
    std::size_t frame = 0;
    for (std::uint64_t k = 0; k < want; ++k) {
      const std::uint64_t index = k * total / want;
      while (offsets[frame + 1] <= index) ++frame;
      std::uint64_t code = index - offsets[frame];
      const auto& ups = frame_ups[frame];
      models_.push_back(frames[frame]);
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        valuation_[i].push_back(ups[code % ups.size()]);
        code /= ups.size();
      }
    }
  }

  Fingerprint leaf_fingerprint(Formula g) const {
    Fingerprint fp(models_.size(), 0);
    if (g.is(Kind::Top))
      for (std::size_t k = 0; k < models_.size(); ++k) fp[k] = static_cast<std::uint8_t>((1u << models_[k].worlds) - 1);
    if (g.is_var())
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == g.var_index()) fp = valuation_[i];
    return fp;
  }

  Fingerprint node_fingerprint(Kind kind, const Fingerprint& l, const Fingerprint& r) const {
    Fingerprint fp(models_.size());
    for (std::size_t k = 0; k < models_.size(); ++k) {
      switch (kind) {
        case Kind::And: fp[k] = l[k] & r[k]; break;
        case Kind::Or: fp[k] = l[k] | r[k]; break;
        default: {
          const std::uint8_t bad = l[k] & ~r[k];
          std::uint8_t out = 0;
          for (std::size_t w = 0; w < models_[k].worlds; ++w)
            if (!(models_[k].up[w] & bad)) out |= static_cast<std::uint8_t>(1u << w);
          fp[k] = out;
        }
      }
    }
    return fp;
  }

  static std::uint64_t hash(const Fingerprint& fp) {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto b : fp) h = (h ^ b) * 1099511628211ULL;
    return h;
  }

  Formula share(Formula g) {
    Formula h = g;
    Fingerprint fp;
    if (g.is_binary()) {
      const Formula l = rep_.at(g.lhs().id()), r = rep_.at(g.rhs().id());
      if (l == r) {
        if (!g.is(Kind::Imp)) return l;
        h = top();
      } else {
        h = rebuild(g, l, r);
      }
      if (auto it = fingerprint_.find(h.id()); it != fingerprint_.end()) return h;
      if (h.is_binary()) fp = node_fingerprint(h.kind(), fingerprint_.at(l.id()), fingerprint_.at(r.id()));
    }
    if (!h.is_binary()) {
      if (auto it = fingerprint_.find(h.id()); it != fingerprint_.end()) return h;
      fp = leaf_fingerprint(h);
    }
    auto& bucket = buckets_[hash(fp)];
    for (Formula c : bucket) {
      if (fingerprint_.at(c.id()) != fp) continue;
      try {
        if (prover_.equiv({}, h, c)) return c;
      } catch (const ResourceLimit&) {
      }
    }
    bucket.push_back(h);
    fingerprint_.emplace(h.id(), std::move(fp));
    return h;
  }

  std::vector<std::uint32_t> vars_;
  Prover prover_;
  std::vector<Model> models_;
  std::vector<Fingerprint> valuation_;  // per variable, per model
  std::unordered_map<std::uint32_t, Formula> rep_;
  std::unordered_map<std::uint32_t, Fingerprint> fingerprint_;  // representatives only
  std::unordered_map<std::uint64_t, std::vector<Formula>> buckets_;
};

}  // namespace ruit
