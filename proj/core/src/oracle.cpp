#include "fsrecon/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <thread>

#include "fsrecon/cyclotomic.hpp"
#include "fsrecon/error.hpp"
#include "fsrecon/fs.hpp"
#include "fsrecon/moves.hpp"
#include "fsrecon/vmodule.hpp"

namespace fsrecon {

std::vector<GroupElement> scan_domain(const GroupSpec& group, std::int64_t box) {
  if (box < 0) throw Error(ErrorCode::InvalidInput, "box must be non-negative");
  std::vector<GroupElement> out;
  const auto torsion = group.torsion_elements();
  const int r = group.free_rank();
  const std::int64_t side = 2 * box + 1;
  std::int64_t cells = 1;
  for (int i = 0; i < r; ++i) cells = checked_mul(cells, side);
  for (const auto& t : torsion) {
    for (std::int64_t c = 0; c < cells; ++c) {
      std::vector<std::int64_t> raw = t.coords;  // free coordinates are zero here
      std::int64_t rest = c;
      for (int i = r; i-- > 0;) {
        raw[group.torsion_rank() + static_cast<std::size_t>(i)] = rest % side - box;
        rest /= side;
      }
      out.push_back(group.element(std::move(raw)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> count_multisets(std::size_t domain_size, std::int64_t max_size,
                                           std::int64_t max_multiplicity) {
  if (max_multiplicity < 0) max_multiplicity = max_size;
  // ways[s] after processing each domain element: multisets of size s.
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(std::max<std::int64_t>(max_size, 0) + 1), 0);
  if (max_size < 0) return {};
  ways[0] = 1;
  for (std::size_t e = 0; e < domain_size; ++e) {
    std::vector<std::uint64_t> next(ways.size(), 0);
    for (std::size_t s = 0; s < ways.size(); ++s)
      for (std::int64_t m = 0; m <= max_multiplicity && s + static_cast<std::size_t>(m) < ways.size(); ++m)
        next[s + static_cast<std::size_t>(m)] += ways[s];
    ways = std::move(next);
  }
  return ways;
}

std::vector<IntFunction> enumerate_multisets(const GroupSpec& group, std::vector<GroupElement> domain,
                                             std::int64_t max_size, std::int64_t max_multiplicity) {
  if (max_multiplicity < 0) max_multiplicity = max_size;
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  for (const auto& g : domain) group.require(g);
  std::vector<IntFunction> out;
  std::vector<std::size_t> chosen;  // non-decreasing domain indices
  std::function<void(std::size_t, std::size_t, std::int64_t)> rec = [&](std::size_t target, std::size_t start,
                                                                        std::int64_t run) {
    if (chosen.size() == target) {
      IntFunction f(group);
      for (std::size_t i : chosen) f.add(domain[i], 1);
      out.push_back(std::move(f));
      return;
    }
    for (std::size_t i = start; i < domain.size(); ++i) {
      const std::int64_t r = (!chosen.empty() && chosen.back() == i) ? run + 1 : 1;
      if (r > max_multiplicity) continue;
      chosen.push_back(i);
      rec(target, i, r);
      chosen.pop_back();
    }
  };
  for (std::int64_t size = 0; size <= max_size; ++size) rec(static_cast<std::size_t>(size), 0, 0);
  return out;
}

namespace {

struct Entry {
  IntFunction set;
  FSMultiset fs;
  GroupElement sum;
};

struct PairOutcome {
  std::size_t i = 0;
  std::size_t j = 0;
  bool equivalent = false;
  GroupElement shift;
  bool certificate = false;
  bool fourier = false;
  std::vector<Discrepancy> discrepancies;
};

std::string render(const GroupElement& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.coords.size(); ++i) s += (i ? "," : "") + std::to_string(g.coords[i]);
  return s + ")";
}

std::string render(const std::vector<GroupElement>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + render(v[i]);
  return s + "]";
}

PairOutcome check_pair(const FiberScanConfig& cfg, const std::vector<Entry>& entries, std::size_t i, std::size_t j) {
  const GroupSpec& group = cfg.group;
  const Entry& A = entries[i];
  const Entry& B = entries[j];
  PairOutcome out;
  out.i = i;
  out.j = j;
  auto flag = [&](std::string kind, std::string detail) {
    out.discrepancies.push_back(Discrepancy{std::move(kind), std::move(detail), A.set, B.set});
  };

  try {
    const auto shifts = find_shifts(A.fs, B.fs);
    out.equivalent = !shifts.empty();
    if (shifts.size() > 1) flag("shift_not_unique", "find_shifts returned " + render(shifts));
    if (out.equivalent) {
      out.shift = shifts.front();
      const auto back = find_shifts(B.fs, A.fs);
      if (back.size() != 1 || !(back.front() == group.neg(out.shift)))
        flag("symmetry", "reverse shifts " + render(back) + " are not -" + render(out.shift));
      if (group.is_zero(out.shift) != (A.sum == B.sum))
        flag("no_shift_rule", "s = " + render(out.shift) + " but sum A = " + render(A.sum) + ", sum B = " + render(B.sum));
    }

    const IntFunction mu = A.set - B.set;
    if (cfg.checks.v_check || cfg.checks.moves) {
      const VMembershipReport rep = v_check(mu);
      if (rep.member != out.equivalent)
        flag("fs_vs_v", std::string("FS shift test says ") + (out.equivalent ? "equivalent" : "not equivalent") +
                            ", V membership says " + (rep.member ? "member" : "non-member"));
      if (!rep.member && (!rep.witness || !witness_holds(mu, *rep.witness)))
        flag("bad_witness", "non-membership witness does not re-verify");

      if (cfg.checks.moves && rep.member) {
        try {
          const MoveCertificate cert = synthesize_moves(A.set, B.set);
          const CertificateReport cr = verify_certificate(A.set, B.set, cert);
          if (!cr.ok) flag("certificate", "certificate failed verification");
          else out.certificate = true;
          if (out.equivalent && !(cert.total_shift == out.shift))
            flag("certificate_shift", "certificate shift " + render(cert.total_shift) + " vs FS shift " +
                                          render(out.shift));
        } catch (const Error& e) {
          flag("synthesis", e.what());
        }
      }
    }

    if (cfg.checks.fourier && group.is_cyclic_finite()) {
      std::vector<GroupElement> fourier;
      for (std::int64_t s : fourier_shifts(mu)) fourier.push_back(group.element({s}));
      if (fourier != shifts) flag("fourier", "Fourier shifts " + render(fourier) + " vs FS shifts " + render(shifts));
      out.fourier = true;
    }
  } catch (const Error& e) {
    flag("exception", e.what());
  }
  return out;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::uint64_t planned_pairs(const FiberScanConfig& cfg) {
  const std::size_t domain = cfg.support_restriction ? cfg.support_restriction->size()
                                                     : scan_domain(cfg.group, cfg.box).size();
  std::uint64_t total = 0;
  for (std::uint64_t c : count_multisets(domain, cfg.max_size, cfg.max_multiplicity)) total += c * (c - (c > 0)) / 2;
  return total;
}

FiberScanReport fiber_scan(const FiberScanConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const GroupSpec& group = cfg.group;
  FiberScanReport rep;
  rep.planned_pairs = planned_pairs(cfg);

  std::vector<GroupElement> domain = cfg.support_restriction ? *cfg.support_restriction : scan_domain(group, cfg.box);
  const auto sets = enumerate_multisets(group, std::move(domain), cfg.max_size, cfg.max_multiplicity);
  rep.multisets = sets.size();

  std::vector<Entry> entries;
  entries.reserve(sets.size());
  for (const auto& s : sets) {
    Entry e{s, fs_multiset(s, std::max<std::int64_t>(cfg.max_size, kDefaultSizeCap)), multiset_sum(s)};
    if (cfg.checks.sum_rule) {
      const std::int64_t q = s.total();
      const GroupElement expected = q == 0 ? group.zero() : group.scale(e.sum, std::int64_t{1} << (q - 1));
      if (!(weighted_sum(e.fs) == expected))
        rep.discrepancies.push_back(Discrepancy{"sum_rule", "sum of FS(A) is " + render(weighted_sum(e.fs)) +
                                                                ", expected " + render(expected), s, s});
      if (e.fs.total() != BigInt(1) << static_cast<unsigned>(q))
        rep.discrepancies.push_back(Discrepancy{"fs_total", "FS total is not 2^|A|", s, s});
      ++rep.sum_rule_checked;
    }
    entries.push_back(std::move(e));
  }

  // Multisets are ordered by size, so each size is a contiguous bucket.
  std::vector<std::size_t> bucket_end(entries.size());
  for (std::size_t i = entries.size(); i-- > 0;) {
    const bool last = i + 1 == entries.size() || entries[i + 1].set.total() != entries[i].set.total();
    bucket_end[i] = last ? i + 1 : bucket_end[i + 1];
  }

  const unsigned jobs = std::max(1U, cfg.jobs);
  std::vector<std::vector<PairOutcome>> per_thread(jobs);
  std::vector<std::uint64_t> tested(jobs, 0);
  auto worker = [&](unsigned t) {
    for (std::size_t i = t; i < entries.size(); i += jobs) {
      for (std::size_t j = i + 1; j < bucket_end[i]; ++j) {
        PairOutcome o = check_pair(cfg, entries, i, j);
        ++tested[t];
        if (o.equivalent || !o.discrepancies.empty() || o.fourier) per_thread[t].push_back(std::move(o));
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker, t);
    for (auto& th : threads) th.join();
  }

  std::vector<PairOutcome> outcomes;
  for (unsigned t = 0; t < jobs; ++t) {
    rep.pairs_tested += tested[t];
    for (auto& o : per_thread[t]) outcomes.push_back(std::move(o));
  }
  std::sort(outcomes.begin(), outcomes.end(),
            [](const PairOutcome& x, const PairOutcome& y) { return std::tie(x.i, x.j) < std::tie(y.i, y.j); });

  UnionFind uf(entries.size());
  std::vector<std::vector<std::pair<std::size_t, GroupElement>>> adj(entries.size());
  for (auto& o : outcomes) {
    if (o.fourier) ++rep.fourier_checked;
    if (o.certificate) ++rep.certificates_issued;
    for (auto& d : o.discrepancies) rep.discrepancies.push_back(std::move(d));
    if (!o.equivalent) continue;
    ++rep.equivalent_pairs;
    uf.unite(o.i, o.j);
    adj[o.i].emplace_back(o.j, group.neg(o.shift));
    adj[o.j].emplace_back(o.i, o.shift);
    if (cfg.collect_equivalent_pairs) rep.pairs.push_back(EquivalentPair{entries[o.i].set, entries[o.j].set, o.shift});
  }

  // Each class must be a clique of tested pairs with shifts that add up:
  // FS(X) = FS(root) + p(X) for one potential p on the class.
  std::map<std::size_t, std::uint64_t> class_size;
  std::map<std::size_t, std::uint64_t> class_edges;
  for (std::size_t i = 0; i < entries.size(); ++i) ++class_size[uf.find(i)];
  for (const auto& o : outcomes)
    if (o.equivalent) ++class_edges[uf.find(o.i)];
  rep.classes = class_size.size();
  for (const auto& [root, k] : class_size) {
    const std::uint64_t edges = class_edges.count(root) ? class_edges[root] : 0;
    if (edges != k * (k - 1) / 2)
      rep.discrepancies.push_back(Discrepancy{"transitivity", "class of " + std::to_string(k) + " multisets has only " +
                                                                  std::to_string(edges) + " equivalent pairs",
                                              entries[root].set, entries[root].set});
  }
  std::vector<std::optional<GroupElement>> potential(entries.size());
  for (std::size_t root = 0; root < entries.size(); ++root) {
    if (uf.find(root) != root) continue;
    potential[root] = group.zero();
    std::queue<std::size_t> todo;
    todo.push(root);
    while (!todo.empty()) {
      const std::size_t x = todo.front();
      todo.pop();
      // adj[x] holds (y, s) with FS(y) = FS(x) + s
      for (const auto& [y, s] : adj[x]) {
        const GroupElement py = group.add(*potential[x], s);
        if (!potential[y]) {
          potential[y] = py;
          todo.push(y);
        } else if (!(*potential[y] == py)) {
          rep.discrepancies.push_back(Discrepancy{"shift_cocycle", "shifts around a cycle do not sum to zero",
                                                  entries[x].set, entries[y].set});
        }
      }
    }
  }

  rep.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace fsrecon
