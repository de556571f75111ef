#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "cloudlab/states.hpp"

namespace cloudlab {

namespace {

using Value = TwoValuedState::Value;

struct SharedBudget {
  std::size_t cap;
  std::atomic<std::size_t> produced{0};
  std::atomic<bool> stop{false};
};

// Depth-first search for type-II states with a trail for undo. Assigning a
// true vertex clears its context-mates; a context left with one open member
// and no true member forces that member true.
class Search {
 public:
  Search(const Cloud& cloud, SharedBudget& budget, std::size_t stop_after)
      : cloud_(cloud),
        budget_(budget),
        stop_after_(stop_after),
        values_(cloud.vertex_count(), Value::Undefined),
        ones_(cloud.context_count(), 0),
        open_(cloud.context_count(), 0) {
    for (std::size_t c = 0; c < cloud.context_count(); ++c) open_[c] = cloud.contexts()[c].size();
  }

  /// The context branched on first, or nullopt when no context is open.
  std::optional<std::size_t> root_context() const { return pick_context(); }

  /// Explores the subtree where members before `branch` in the root context
  /// are false and member `branch` is true.
  void run_branch(std::size_t root, std::size_t branch) {
    const auto& ctx = cloud_.contexts()[root];
    const std::size_t mark = trail_.size();
    bool ok = true;
    for (std::size_t i = 0; i < branch && ok; ++i) {
      if (values_[ctx[i]] == Value::Undefined) ok = assign(ctx[i], false);
      else ok = values_[ctx[i]] == Value::False;
    }
    if (ok) {
      const Value current = values_[ctx[branch]];
      if (current == Value::True || (current == Value::Undefined && assign(ctx[branch], true))) search();
    }
    undo(mark);
  }

  void run_all() { search(); }

  std::vector<TwoValuedState>& results() { return results_; }

 private:
  std::optional<std::size_t> pick_context() const {
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < open_.size(); ++c) {
      if (ones_[c] != 0) continue;
      if (!best || open_[c] < open_[*best]) best = c;
    }
    return best;
  }

  bool done() const {
    return budget_.stop.load(std::memory_order_relaxed) ||
           (stop_after_ != 0 && results_.size() >= stop_after_);
  }

  void search() {
    if (done()) return;
    const auto c = pick_context();
    if (!c) {
      finish_free_vertices(0);
      return;
    }
    const auto& ctx = cloud_.contexts()[*c];
    const std::size_t mark = trail_.size();
    for (VertexIndex v : ctx) {
      if (values_[v] == Value::False) continue;
      if (values_[v] == Value::True) {
        search();
        break;
      }
      const std::size_t inner = trail_.size();
      if (assign(v, true)) search();
      undo(inner);
      if (done() || !assign(v, false)) break;
    }
    undo(mark);
  }

  // Vertices outside every context are unconstrained.
  void finish_free_vertices(VertexIndex from) {
    VertexIndex v = from;
    while (v < values_.size() && values_[v] != Value::Undefined) ++v;
    if (v == values_.size()) {
      record();
      return;
    }
    for (Value choice : {Value::False, Value::True}) {
      if (done()) return;
      values_[v] = choice;
      finish_free_vertices(v + 1);
      values_[v] = Value::Undefined;
    }
  }

  void record() {
    const std::size_t total = budget_.produced.fetch_add(1, std::memory_order_relaxed) + 1;
    if (total > budget_.cap) {
      budget_.stop.store(true);
      throw ResourceLimitError("more than " + std::to_string(budget_.cap) +
                               " type-II states; raise the state cap");
    }
    results_.emplace_back(values_);
  }

  // Sets v and propagates; returns false on a contradiction. The caller
  // undoes to its own trail mark either way.
  bool assign(VertexIndex v, bool value) {
    std::vector<std::pair<VertexIndex, bool>> queue{{v, value}};
    while (!queue.empty()) {
      const auto [x, val] = queue.back();
      queue.pop_back();
      const Value want = val ? Value::True : Value::False;
      if (values_[x] != Value::Undefined) {
        if (values_[x] != want) return false;
        continue;
      }
      values_[x] = want;
      trail_.push_back(x);
      for (std::size_t c : cloud_.contexts_of(x)) {
        --open_[c];
        if (val) ++ones_[c];
      }
      for (std::size_t c : cloud_.contexts_of(x)) {
        if (ones_[c] > 1) return false;
        const auto& ctx = cloud_.contexts()[c];
        if (ones_[c] == 1) {
          if (val)
            for (VertexIndex m : ctx)
              if (values_[m] == Value::Undefined) queue.emplace_back(m, false);
          continue;
        }
        if (open_[c] == 0) return false;
        if (open_[c] == 1)
          for (VertexIndex m : ctx)
            if (values_[m] == Value::Undefined) queue.emplace_back(m, true);
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const VertexIndex x = trail_.back();
      trail_.pop_back();
      const bool was_true = values_[x] == Value::True;
      for (std::size_t c : cloud_.contexts_of(x)) {
        ++open_[c];
        if (was_true) --ones_[c];
      }
      values_[x] = Value::Undefined;
    }
  }

  const Cloud& cloud_;
  SharedBudget& budget_;
  std::size_t stop_after_;
  std::vector<Value> values_;
  std::vector<std::size_t> ones_;
  std::vector<std::size_t> open_;
  std::vector<VertexIndex> trail_;
  std::vector<TwoValuedState> results_;
};

}  // namespace

StateSet enumerate_states(const Cloud& cloud, const EnumerationOptions& options) {
  if (cloud.vertex_count() > options.vertex_cap) {
    throw ResourceLimitError("cloud has " + std::to_string(cloud.vertex_count()) +
                             " vertices, above the enumeration cap of " +
                             std::to_string(options.vertex_cap));
  }
  SharedBudget budget{options.state_cap};
  StateSet out{StateKind::II, {}};

  unsigned jobs = options.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.jobs;
  Search probe(cloud, budget, options.stop_after);
  const auto root = probe.root_context();
  if (options.stop_after != 0 || !root || jobs <= 1) {
    probe.run_all();
    out.states = std::move(probe.results());
  } else {
    const std::size_t branches = cloud.contexts()[*root].size();
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, branches));
    std::vector<std::vector<TwoValuedState>> parts(branches);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      try {
        for (std::size_t b = next++; b < branches; b = next++) {
          Search s(cloud, budget, 0);
          s.run_branch(*root, b);
          parts[b] = std::move(s.results());
        }
      } catch (...) {
        budget.stop.store(true);
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    };
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
    for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out.states));
  }
  std::sort(out.states.begin(), out.states.end());
  return out;
}

}  // namespace cloudlab
